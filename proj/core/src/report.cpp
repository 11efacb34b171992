#include "ggv/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <thread>

#include "ggv/error.hpp"
#include "ggv/harness/sampling.hpp"

namespace ggv {

const ConditionResult& CheckReport::condition(const std::string& id) const {
  for (const auto& c : conditions)
    if (c.id == id) return c;
  throw std::out_of_range("report '" + suite + "' has no condition '" + id + "'");
}

double CheckReport::max_residual() const {
  double m = 0.0;
  for (const auto& c : conditions) m = std::max(m, c.max_residual);
  return m;
}

void CheckReport::finalize() {
  const bool enough = points_requested > 0 &&
                      points_evaluated >= kMinEvaluatedFraction * static_cast<double>(points_requested);
  pass = enough;
  for (auto& c : conditions) {
    c.pass = enough && c.max_residual <= tol;
    pass = pass && c.pass;
  }
}

void Residual::add(double lhs, double rhs) {
  const double d = std::abs(lhs - rhs);
  diff_ = std::isnan(d) ? std::numeric_limits<double>::infinity() : std::max(diff_, d);
  scale_ = std::max({scale_, std::abs(lhs), std::abs(rhs)});
}

void Residual::add(std::span<const double> lhs, std::span<const double> rhs) {
  if (lhs.size() != rhs.size()) throw DimensionMismatch("residual sides differ in size");
  for (std::size_t i = 0; i < lhs.size(); ++i) add(lhs[i], rhs[i]);
}

void Residual::add(const RealMatrix& lhs, const RealMatrix& rhs) { add(lhs.data(), rhs.data()); }

void Residual::add(const Form3& lhs, const Form3& rhs) { add(lhs.data(), rhs.data()); }

void Residual::add_defect(std::span<const double> v) {
  for (double x : v) add(x, 0.0);
}

double Residual::normalized() const { return diff_ / (1.0 + scale_); }

CheckReport run_pointwise(std::string suite, std::vector<std::string> ids, std::span<const Point> points,
                          const CheckOptions& opts,
                          const std::function<std::vector<double>(const Point&)>& f) {
  const std::size_t n = points.size();
  std::vector<std::optional<std::vector<double>>> results(n);
  std::vector<std::exception_ptr> errors(n);

  auto work = [&](std::size_t i) {
    try {
      results[i] = f(points[i]);
    } catch (const DomainError&) {
    } catch (const SingularMetric&) {
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const int workers = std::max(1, std::min<int>(opts.workers, static_cast<int>(n)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) work(i);
      });
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  CheckReport r;
  r.suite = std::move(suite);
  r.points_requested = opts.points;
  r.seed = opts.seed;
  r.tol = opts.tol;
  r.conditions.resize(ids.size());
  for (std::size_t c = 0; c < ids.size(); ++c) r.conditions[c].id = std::move(ids[c]);
  std::vector<bool> seen(ids.size(), false);
  for (std::size_t i = 0; i < n; ++i) {
    if (!results[i]) continue;
    ++r.points_evaluated;
    const auto& v = *results[i];
    if (v.size() != r.conditions.size()) throw std::logic_error("residual count does not match condition ids");
    for (std::size_t c = 0; c < v.size(); ++c) {
      const double x = std::isnan(v[c]) ? std::numeric_limits<double>::infinity() : v[c];
      auto& cond = r.conditions[c];
      if (!seen[c] || x > cond.max_residual) {
        cond.max_residual = x;
        cond.worst_point = points[i];
        seen[c] = true;
      }
    }
  }
  r.finalize();
  return r;
}

CheckReport run_pointwise(std::string suite, std::vector<std::string> ids, const Chart& chart,
                          const CheckOptions& opts,
                          const std::function<std::vector<double>(const Point&)>& f) {
  const auto points = sample_points(chart, opts.points, opts.seed);
  return run_pointwise(std::move(suite), std::move(ids), points, opts, f);
}

CheckReport merge_reports(std::string suite, const std::vector<CheckReport>& parts) {
  CheckReport r;
  r.suite = std::move(suite);
  if (parts.empty()) return r;
  r.points_requested = parts.front().points_requested;
  r.points_evaluated = parts.front().points_evaluated;
  r.seed = parts.front().seed;
  r.tol = parts.front().tol;
  for (const auto& p : parts) {
    r.points_requested = std::max(r.points_requested, p.points_requested);
    r.points_evaluated = std::min(r.points_evaluated, p.points_evaluated);
    for (const auto& c : p.conditions) {
      const bool dup = std::any_of(r.conditions.begin(), r.conditions.end(),
                                   [&](const ConditionResult& e) { return e.id == c.id; });
      if (!dup) r.conditions.push_back(c);
    }
  }
  r.finalize();
  return r;
}

}  // namespace ggv
