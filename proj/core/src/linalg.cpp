#include "ggv/linalg.hpp"

namespace ggv {

RealMatrix values(const JetMatrix& m) {
  RealMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).value();
  return out;
}

Vector values(std::span<const Jet> v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].value();
  return out;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs(const RealMatrix& m) { return max_abs(m.data()); }

bool leading_minors_positive(const RealMatrix& m, double eps) {
  const int n = m.rows();
  for (int k = 1; k <= n; ++k) {
    RealMatrix sub(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub(i, j) = m(i, j);
    if (!(determinant(sub) > eps)) return false;
  }
  return true;
}

}  // namespace ggv
