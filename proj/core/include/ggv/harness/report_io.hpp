#pragma once

#include <string>
#include <vector>

#include "ggv/report.hpp"

namespace ggv {

/// One JSON object per condition: {suite, condition, max_residual, worst_point, points, seed, tol, verdict}.
std::string to_jsonl(const std::vector<CheckReport>& reports);
/// Human-readable table.
std::string to_text(const std::vector<CheckReport>& reports);

}  // namespace ggv
