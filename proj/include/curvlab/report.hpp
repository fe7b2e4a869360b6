#pragma once

#include <string>

#include "curvlab/audit.hpp"

namespace curvlab {

// Doubles are printed with 17 significant digits; NaN and infinities become null.
std::string to_json(const AuditReport& report, bool with_timings = true);
std::string to_text(const AuditReport& report);

std::string to_json(const CompareReport& report, bool with_timings = true);
std::string to_text(const CompareReport& report);

}  // namespace curvlab
