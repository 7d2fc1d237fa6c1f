#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "weilkit/commands.hpp"

namespace fs = std::filesystem;
using namespace weilkit;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// exit codes: 0 ok/skipped, 1 refuted, 2 usage/parse, 3 budget
int exit_code(const std::vector<Report>& reports) {
  bool budget = false, refuted = false;
  for (const auto& r : reports) {
    if (r.status == Report::Status::refuted) refuted = true;
    if (r.status == Report::Status::budget_exceeded) budget = true;
  }
  if (refuted) return 1;
  if (budget) return 3;
  return 0;
}

int run_file(const std::string& path, bool timing) {
  Session session;
  try {
    session = parse_session(read_file(path));
  } catch (const Error& e) {
    std::cerr << path << ": " << to_string(e.kind()) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  auto reports = run_session(session);
  std::cout << reports_to_json(reports, timing).dump(2) << "\n";
  return exit_code(reports);
}

int restrict_one(const std::string& path, const std::string& scheme, bool timing) {
  Session session;
  try {
    session = parse_session(read_file(path));
  } catch (const Error& e) {
    std::cerr << path << ": " << to_string(e.kind()) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  if (!session.schemes.count(scheme)) {
    std::cerr << "no scheme named '" << scheme << "' in " << path << "\n";
    return 2;
  }
  Command cmd;
  cmd.verb = Command::Verb::restrict;
  cmd.names = {scheme};
  cmd.text = "restrict " + scheme;
  Report report = run_command(session, cmd);
  std::cout << report.to_json(timing).dump(2) << "\n";
  return exit_code({report});
}

int run_corpus(const std::string& dir, bool timing) {
  std::vector<fs::path> files;
  if (!fs::exists(dir)) {
    std::cerr << "corpus directory not found: " << dir << "\n";
    return 2;
  }
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".wk") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "no .wk files under " << dir << "\n";
    return 2;
  }
  int worst = 0;
  std::size_t verified = 0, skipped = 0, refuted = 0, budget = 0;
  for (const auto& file : files) {
    Session session;
    try {
      session = parse_session(read_file(file.string()));
    } catch (const Error& e) {
      std::cout << file.filename().string() << ": parse error: " << e.what() << "\n";
      worst = std::max(worst, 2);
      continue;
    }
    auto reports = run_session(session);
    for (const auto& r : reports) {
      std::cout << file.filename().string() << ": " << to_string(r.status) << ": " << r.command;
      if (timing) std::cout << " (" << static_cast<long long>(r.timing_ms) << " ms)";
      std::cout << "\n";
      switch (r.status) {
        case Report::Status::verified: ++verified; break;
        case Report::Status::skipped: ++skipped; break;
        case Report::Status::refuted: ++refuted; break;
        case Report::Status::budget_exceeded: ++budget; break;
      }
    }
    int code = exit_code(reports);
    worst = std::max(worst, code == 3 && worst == 1 ? 1 : code);
  }
  std::cout << verified << " verified, " << skipped << " skipped, " << refuted << " refuted, "
            << budget << " budget-exceeded\n";
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weilkit: Weil restriction of affine schemes, bundles and Thom data"};
  app.require_subcommand(1);

  std::uint64_t point_budget = 0, height_bound = 0;
  int gb_cap = 0;
  app.add_option("--point-budget", point_budget, "max evaluated assignments per enumeration");
  app.add_option("--gb-degree-cap", gb_cap, "max S-polynomial degree in Groebner runs");
  app.add_option("--height-bound", height_bound, "numerator/denominator bound for QQ searches");

  std::string run_path, restrict_path, restrict_scheme_name, corpus_dir = "corpus";
  bool no_timing = false;

  CLI::App* run = app.add_subcommand("run", "run all commands of a session file");
  run->add_option("file", run_path, "session file")->required();
  run->add_flag("--no-timing", no_timing, "zero out timing_ms for byte-stable output");

  CLI::App* restrict_cmd = app.add_subcommand("restrict", "print the restriction of one scheme");
  restrict_cmd->add_option("file", restrict_path, "session file")->required();
  restrict_cmd->add_option("--scheme", restrict_scheme_name, "scheme name")->required();
  restrict_cmd->add_flag("--no-timing", no_timing, "zero out timing_ms");

  CLI::App* corpus = app.add_subcommand("corpus", "run every session under the corpus directory");
  corpus->add_option("--dir", corpus_dir, "corpus directory (default: ./corpus)");
  corpus->add_flag("--no-timing", no_timing, "omit timings from the summary");

  CLI11_PARSE(app, argc, argv);

  if (point_budget) global_options().point_budget = point_budget;
  if (gb_cap) global_options().gb_degree_cap = gb_cap;
  if (height_bound) global_options().height_bound = height_bound;

  if (run->parsed()) return run_file(run_path, !no_timing);
  if (restrict_cmd->parsed()) return restrict_one(restrict_path, restrict_scheme_name, !no_timing);
  if (corpus->parsed()) return run_corpus(corpus_dir, !no_timing);
  return 2;
}
