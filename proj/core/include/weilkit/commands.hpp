#pragma once

#include "weilkit/report.hpp"
#include "weilkit/session.hpp"
#include "weilkit/thom.hpp"

namespace weilkit {

/// Executes one command against the session's declarations. Resource limits
/// surface as budget-exceeded reports, verification failures as refuted
/// reports with witnesses; nothing escapes as an exception except internal
/// errors.
Report run_command(const Session& session, const Command& cmd);

/// All commands in declaration order.
std::vector<Report> run_session(const Session& session);

/// Deterministic JSON rendering: an array of report objects with sorted
/// keys; timing_ms is zeroed when include_timing is false.
nlohmann::json reports_to_json(const std::vector<Report>& reports, bool include_timing);

}  // namespace weilkit
