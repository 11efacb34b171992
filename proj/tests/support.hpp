#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ggv/expr.hpp"
#include "ggv/tensor.hpp"

namespace ggv::test {

inline Expression c(double v) { return Expression::constant(v); }
inline Expression x(int i) { return Expression::coordinate(i); }
inline Expression e(const char* text, int dim) { return parse(text, dim); }

/// Uniform points in [lo, hi]^dim from a fixed seed.
inline std::vector<Point> random_points(int dim, int n, unsigned seed, double lo = -1.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Point> pts(static_cast<std::size_t>(n), Point(static_cast<std::size_t>(dim)));
  for (auto& p : pts)
    for (auto& v : p) v = u(rng);
  return pts;
}

inline double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_diff(const RealMatrix& a, const RealMatrix& b) {
  double m = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace ggv::test

namespace ggv::test {

/// Random expression over `dim` coordinates whose singular locus avoids the real points:
/// quotients, ln and sqrt only see arguments of the form 1 + square.
class RandomExpressions {
 public:
  RandomExpressions(int dim, unsigned seed) : dim_(dim), rng_(seed) {}

  Expression next(int depth = 4) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9);
    switch (pick(rng_)) {
      case 0: return Expression::coordinate(coord());
      case 1: return Expression::constant(real());
      case 2: return next(depth - 1) + next(depth - 1);
      case 3: return next(depth - 1) - next(depth - 1);
      case 4: return next(depth - 1) * next(depth - 1);
      case 5: return next(depth - 1) / positive(depth - 1);
      case 6: return pow(next(depth - 1), small_exponent());
      case 7: return (rng_() & 1U) ? apply(trig(), next(depth - 1))
                                   : apply(Function::exp, apply(trig(), next(depth - 1)));
      case 8: return apply(Function::ln, positive(depth - 1));
      default: return apply(Function::sqrt, positive(depth - 1)) * Expression::norm2();
    }
  }

 private:
  Expression positive(int depth) { return Expression::constant(1.0) + pow(next(depth), 2); }
  int coord() { return std::uniform_int_distribution<int>(1, dim_)(rng_); }
  double real() { return std::uniform_real_distribution<double>(-2.0, 2.0)(rng_); }
  int small_exponent() { return std::uniform_int_distribution<int>(0, 3)(rng_); }
  Function trig() { return (rng_() & 1U) ? Function::sin : Function::cos; }
  int dim_;
  std::mt19937_64 rng_;
};

/// Largest relative disagreement between the jet gradient and a central difference with step h,
/// relative to max(|ad|, |fd|, 1).
inline double gradient_fd_error(const Expression& expr, const Point& p, double h = 1e-6) {
  const Jet j = expr.eval_jet(p);
  double worst = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Point a = p, b = p;
    a[i] += h;
    b[i] -= h;
    const double fd = (expr.eval_value(a) - expr.eval_value(b)) / (2.0 * h);
    const double ad = j.d(static_cast<int>(i));
    worst = std::max(worst, std::abs(ad - fd) / std::max({std::abs(ad), std::abs(fd), 1.0}));
  }
  return worst;
}

}  // namespace ggv::test
