#include "ggv/harness/sampling.hpp"

#include <random>
#include <stdexcept>
#include <string>

#include "ggv/error.hpp"

namespace ggv {

std::vector<Point> sample_points(const Chart& chart, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample count must be >= 1");
  if (chart.dim < 1 || static_cast<int>(chart.box.size()) != chart.dim)
    throw DimensionMismatch("chart box does not match its dimension");
  std::mt19937_64 gen(seed);
  const auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  const long long budget = 1000LL * n;
  Point p(static_cast<std::size_t>(chart.dim));
  for (long long draw = 0; draw < budget && static_cast<int>(out.size()) < n; ++draw) {
    for (int i = 0; i < chart.dim; ++i) {
      const auto [lo, hi] = chart.box[static_cast<std::size_t>(i)];
      p[static_cast<std::size_t>(i)] = lo + (hi - lo) * unit();
    }
    if (chart.admits(p)) out.push_back(p);
  }
  if (static_cast<int>(out.size()) < n)
    throw SamplingExhausted("accepted " + std::to_string(out.size()) + " of " + std::to_string(n) +
                            " points within " + std::to_string(budget) + " draws");
  return out;
}

}  // namespace ggv
