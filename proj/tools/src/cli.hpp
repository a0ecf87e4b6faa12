#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "engine.hpp"

namespace bellbound::cli {

enum ExitCode { kOk = 0, kPropertyFailure = 1, kConfigError = 2, kIncompatible = 3 };

/// The whole program; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::json bound_document(const RunConfig& cfg, const std::vector<ReportRow>& rows);
/// %.17g, the shortest width that round-trips every double.
std::string format_double(double v);

}  // namespace bellbound::cli
