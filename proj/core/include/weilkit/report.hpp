#pragma once

#include <string>

#include <json.hpp>

namespace weilkit {

/// One verification/computation result. `witnesses` is verb-specific but
/// fixed per verb; keys are emitted sorted, and timing stays outside the
/// witnesses so golden comparisons can exclude it.
struct Report {
  enum class Status { verified, refuted, skipped, budget_exceeded };

  std::string command;
  Status status = Status::refuted;
  nlohmann::json witnesses = nlohmann::json::object();
  double timing_ms = 0.0;

  nlohmann::json to_json(bool include_timing = true) const;
};

const char* to_string(Report::Status s);

}  // namespace weilkit
