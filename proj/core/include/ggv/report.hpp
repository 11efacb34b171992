#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ggv/geometry.hpp"
#include "ggv/tensor.hpp"

namespace ggv {

inline constexpr std::uint64_t kDefaultSeed = 0x5EEDC0DE;
inline constexpr double kDefaultTol = 1e-8;
inline constexpr int kDefaultPoints = 64;
/// A report passes only when at least this fraction of requested points evaluated.
inline constexpr double kMinEvaluatedFraction = 0.9;

struct CheckOptions {
  int points = kDefaultPoints;
  std::uint64_t seed = kDefaultSeed;
  double tol = kDefaultTol;
  int workers = 1;
};

struct ConditionResult {
  std::string id;
  double max_residual = 0.0;
  Point worst_point;
  bool pass = false;
};

struct CheckReport {
  std::string suite;
  std::vector<ConditionResult> conditions;
  int points_requested = 0;
  int points_evaluated = 0;
  std::uint64_t seed = kDefaultSeed;
  double tol = kDefaultTol;
  bool pass = false;

  const ConditionResult& condition(const std::string& id) const;
  double residual(const std::string& id) const { return condition(id).max_residual; }
  double max_residual() const;
  /// Recomputes every verdict from residuals, tolerance and point counts.
  void finalize();
};

/// Accumulates one condition at one point: max|L - R| and the scales of both sides.
class Residual {
 public:
  void add(double lhs, double rhs);
  void add(std::span<const double> lhs, std::span<const double> rhs);
  void add(const RealMatrix& lhs, const RealMatrix& rhs);
  void add(const Form3& lhs, const Form3& rhs);
  /// A bare defect (right-hand side zero).
  void add_defect(std::span<const double> v);

  /// max|L-R| / (1 + max(max|L|, max|R|)).
  double normalized() const;
  /// max|L-R|.
  double raw() const { return diff_; }

 private:
  double diff_ = 0.0;
  double scale_ = 0.0;
};

/// Evaluates `f` at every point (in parallel when workers > 1) and reduces
/// each residual slot by max in point order, so the report is independent of
/// the worker count. Points where f throws DomainError or SingularMetric are
/// skipped.
CheckReport run_pointwise(std::string suite, std::vector<std::string> ids, std::span<const Point> points,
                          const CheckOptions& opts,
                          const std::function<std::vector<double>(const Point&)>& f);

/// Samples `opts.points` points of `chart` with `opts.seed` and runs f on them.
CheckReport run_pointwise(std::string suite, std::vector<std::string> ids, const Chart& chart,
                          const CheckOptions& opts,
                          const std::function<std::vector<double>(const Point&)>& f);

/// Concatenates reports, dropping conditions whose id was already present.
CheckReport merge_reports(std::string suite, const std::vector<CheckReport>& parts);

}  // namespace ggv
