#include "ggv/tensor.hpp"

#include "ggv/error.hpp"

namespace ggv {

Chart::Chart(int d, double lo, double hi)
    : dim(d), box(static_cast<std::size_t>(d), {lo, hi}) {}

bool Chart::in_box(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != dim) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < box[i].first || p[i] > box[i].second) return false;
  return true;
}

bool Chart::admits(std::span<const double> p) const {
  if (!in_box(p)) return false;
  if (!exclusion) return true;
  try {
    return exclusion->eval_value(p) > 0.0;
  } catch (const DomainError&) {
    return false;
  }
}

Endomorphism identity_endomorphism(int dim) {
  Endomorphism a(dim);
  for (int i = 0; i < dim; ++i) a.set(i, i, Expression::constant(1.0));
  return a;
}

OneForm differential(const ScalarField& f, int dim) {
  OneForm df(dim);
  for (int i = 0; i < dim; ++i) df[i] = differentiate(f, i + 1, dim);
  return df;
}

TwoForm differential(const OneForm& a) {
  const int m = a.dim();
  TwoForm da(m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const Expression l = differentiate(a[j], i + 1, m);
      const Expression r = differentiate(a[i], j + 1, m);
      if (l.is_zero() && r.is_zero()) continue;
      if (r.is_zero()) da.set(i, j, l);
      else if (l.is_zero()) da.set(i, j, -r);
      else da.set(i, j, l - r);
    }
  return da;
}

}  // namespace ggv
