#pragma once

#include <cstdint>
#include <vector>

#include "ggv/tensor.hpp"

namespace ggv {

/// Deterministic rejection sampling in the chart box.
///
/// Draws come from std::mt19937_64 (fully specified by the standard, hence
/// identical on every platform); each coordinate uses the top 53 bits of one
/// draw as a uniform number in [0,1). Points failing the chart exclusion are
/// rejected. Throws SamplingExhausted when fewer than n points are accepted
/// within 1000 n candidate points.
std::vector<Point> sample_points(const Chart& chart, int n, std::uint64_t seed);

}  // namespace ggv
