#pragma once

#include <string>

#include "json.hpp"

#include "aimlinsys/numeric.hpp"

namespace aimlinsys::cli {

using Json = nlohmann::json;

inline constexpr const char* kReportSchema = "aimlinsys-report/1";

/// Keys in sorted order, doubles as %.17g, two-space indent.
std::string dump_report(const Json& j);

Json complex_json(Complex z);

}  // namespace aimlinsys::cli
