#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_helpers.hpp"
#include "weilkit/commands.hpp"

using namespace weilkit;

#ifndef WEILKIT_SOURCE_DIR
#define WEILKIT_SOURCE_DIR "."
#endif

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("parsing the session from the declaration example") {
  auto s = parse_session(
      "field k = GF(2); algebra L = k[t]/(t^2+t+1); scheme X over L = [x,y]/(x*y-1)");
  CHECK(s.declaration_order.size() == 3);
  CHECK(s.fields.count("k") == 1);
  CHECK(s.algebras.count("L") == 1);
  CHECK(s.schemes.count("X") == 1);
  CHECK(s.schemes.at("X")->nvars() == 2);
  CHECK(s.algebras.at("L")->degree() == 2);
}

TEST_CASE("undefined names carry a location") {
  try {
    parse_session("field k = GF(2)\nscheme X over M = [x]/()");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::name_error);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(std::string(e.what()).find("M") != std::string::npos);
  }
}

TEST_CASE("inseparable algebras are a TypeMismatch at declaration") {
  try {
    parse_session("field k = GF(2)\nalgebra L = k[t]/(t^2)");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::type_mismatch);
    CHECK(std::string(e.what()).find("NotSeparable") != std::string::npos);
  }
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_session("field k = GF(2)\nfield m = ");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::syntax_error);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("duplicate names are rejected") {
  CHECK_THROWS_AS(parse_session("field k = GF(2)\nfield k = GF(3)"), Error);
}

TEST_CASE("polynomial sub-parser") {
  auto R = wt::ring(wt::qi(), {"x", "y"});
  Poly p = parse_polynomial(R, "x^2 - 1/2*y + t*x*y");
  Poly x = wt::var(R, 0), y = wt::var(R, 1);
  Poly expect = x * x - y.scaled(R->coeff->from_base(BaseElem{Rational(1, 2)})) +
                (x * y).scaled(R->coeff->gen());
  CHECK(p.equals(expect));

  // '*' must be explicit: '2x' does not parse
  CHECK_THROWS_AS(parse_polynomial(R, "2x"), Error);
  // 't' is rejected over a plain field
  auto Rk = wt::ring(wt::gf(2), {"x"});
  CHECK_THROWS_AS(parse_polynomial(Rk, "t*x"), Error);
}

TEST_CASE("morphism arity errors surface at declaration") {
  try {
    parse_session(
        "field k = GF(2); algebra L = k[t]/(t^2+t+1)\n"
        "scheme A1 over L = [x]/(); scheme Gm over L = [x,y]/(x*y-1)\n"
        "morphism bad : A1 -> Gm = (x)");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::type_mismatch);
  }
}

TEST_CASE("run_command produces deterministic JSON") {
  auto src =
      "field k = GF(2); algebra L = k[t]/(t^2+t+1); scheme X over L = [x,y]/(x*y-1)\n"
      "verify adjunction X over GF(2)\nrestrict X";
  auto session = parse_session(src);
  auto r1 = reports_to_json(run_session(session), false).dump(2);
  auto r2 = reports_to_json(run_session(session), false).dump(2);
  CHECK(r1 == r2);
  CHECK(r1.find("\"status\": \"verified\"") != std::string::npos);
}

TEST_CASE("points commands parse all three test algebra kinds") {
  auto session = parse_session(
      "field k = GF(2); algebra L = k[t]/(t^2+t+1)\n"
      "scheme X over k = [x]/()\n"
      "points X over GF(4)\npoints X over L\npoints X over dual GF(2)");
  auto reports = run_session(session);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].witnesses["count"] == 4);
  CHECK(reports[1].witnesses["count"] == 4);
  CHECK(reports[2].witnesses["count"] == 4);  // 2 points x 2 tangents
  CHECK(reports[1].witnesses["algebra"] == "GF(2)[t]/(t^2 + t + 1)");
}

TEST_CASE("budget errors map to budget-exceeded reports") {
  auto session = parse_session(
      "field k = GF(5)\nscheme A over k = [x,y,z]/(x^2+y^2+z^2)\npoints A over GF(25)");
  auto old = global_options().point_budget;
  global_options().point_budget = 100;
  auto reports = run_session(session);
  global_options().point_budget = old;
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].status == Report::Status::budget_exceeded);
}

TEST_CASE("refuted verifications carry witnesses") {
  // a non-smooth scheme without the expectation flag refutes
  auto session = parse_session(
      "field k = QQ; algebra L = k[t]/(t^2+1)\n"
      "scheme Cusp over L = [x,y]/(y^2 - x^3)\n"
      "verify preserves-smooth Cusp dim 1");
  auto reports = run_session(session);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].status == Report::Status::refuted);
  CHECK(reports[0].witnesses.contains("source"));
  CHECK(reports[0].witnesses["source"]["smooth"] == false);
}

TEST_CASE("full corpus runs to verified and matches the golden files") {
  namespace fs = std::filesystem;
  fs::path root(WEILKIT_SOURCE_DIR);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(root / "corpus"))
    if (entry.path().extension() == ".wk") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  REQUIRE(!files.empty());
  for (const auto& file : files) {
    CAPTURE(file.string());
    auto session = parse_session(slurp(file));
    auto reports = run_session(session);
    for (const auto& r : reports) {
      CAPTURE(r.command);
      bool ok = r.status == Report::Status::verified || r.status == Report::Status::skipped;
      CHECK(ok);
    }
    fs::path golden = root / "tests" / "golden" / (file.stem().string() + ".json");
    REQUIRE(fs::exists(golden));
    std::string expected = slurp(golden);
    std::string actual = reports_to_json(reports, false).dump(2) + "\n";
    CHECK(actual == expected);
  }
}
