#include "ggv/geometry.hpp"

#include <cmath>

namespace ggv {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

void require_dim(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionMismatch("field dimensions differ");
}

}  // namespace

double Form3::apply(std::span<const double> x, std::span<const double> y, std::span<const double> z) const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) {
    if (x[sz(i)] == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y[sz(j)] == 0.0) continue;
      for (int k = 0; k < dim_; ++k) s += (*this)(i, j, k) * x[sz(i)] * y[sz(j)] * z[sz(k)];
    }
  }
  return s;
}

Form3 Form3::pulled_by(const RealMatrix& j) const {
  return restricted(j);
}

Form3 Form3::restricted(const RealMatrix& frame) const {
  const int k = frame.cols();
  // Contract one slot at a time: O(m^3 k) instead of O(m^3 k^3).
  std::vector<double> t1(sz(k * dim_ * dim_), 0.0);
  for (int a = 0; a < k; ++a)
    for (int i = 0; i < dim_; ++i) {
      const double f = frame(i, a);
      if (f == 0.0) continue;
      for (int j = 0; j < dim_; ++j)
        for (int l = 0; l < dim_; ++l) t1[sz((a * dim_ + j) * dim_ + l)] += f * (*this)(i, j, l);
    }
  std::vector<double> t2(sz(k * k * dim_), 0.0);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int j = 0; j < dim_; ++j) {
        const double f = frame(j, b);
        if (f == 0.0) continue;
        for (int l = 0; l < dim_; ++l) t2[sz((a * k + b) * dim_ + l)] += f * t1[sz((a * dim_ + j) * dim_ + l)];
      }
  Form3 r(k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c) {
        double s = 0.0;
        for (int l = 0; l < dim_; ++l) s += frame(l, c) * t2[sz((a * k + b) * dim_ + l)];
        r(a, b, c) = s;
      }
  return r;
}

Form3& Form3::operator+=(const Form3& o) {
  if (o.dim_ != dim_) throw DimensionMismatch("3-array dimensions differ");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

Form3& Form3::operator-=(const Form3& o) {
  if (o.dim_ != dim_) throw DimensionMismatch("3-array dimensions differ");
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

Form3& Form3::operator*=(double s) {
  for (double& v : v_) v *= s;
  return *this;
}

Form3 operator+(Form3 a, const Form3& b) { return a += b; }
Form3 operator-(Form3 a, const Form3& b) { return a -= b; }
Form3 operator*(double s, Form3 a) { return a *= s; }

Vector lie_bracket(std::span<const Jet> x, std::span<const Jet> y) {
  require_dim(x.size(), y.size());
  const int m = static_cast<int>(x.size());
  Vector r(x.size(), 0.0);
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int l = 0; l < m; ++l) s += x[sz(l)].value() * y[sz(i)].d(l) - y[sz(l)].value() * x[sz(i)].d(l);
    r[sz(i)] = s;
  }
  return r;
}

Vector lie_derivative(std::span<const Jet> x, std::span<const Jet> a) {
  require_dim(x.size(), a.size());
  const int m = static_cast<int>(x.size());
  Vector r(x.size(), 0.0);
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int l = 0; l < m; ++l) s += x[sz(l)].value() * a[sz(i)].d(l) + a[sz(l)].value() * x[sz(l)].d(i);
    r[sz(i)] = s;
  }
  return r;
}

Vector lie_derivative_endo(const JetMatrix& a, std::span<const Jet> z, std::span<const Jet> x) {
  const JetVector ax = a * x;
  const Vector zx = lie_bracket(z, x);
  return lie_bracket(z, ax) - values(a) * zx;
}

RealMatrix exterior_derivative(std::span<const Jet> a) {
  const int m = static_cast<int>(a.size());
  RealMatrix d(m, m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double v = a[sz(j)].d(i) - a[sz(i)].d(j);
      d(i, j) = v;
      d(j, i) = -v;
    }
  return d;
}

Form3 exterior_derivative(const JetMatrix& s) {
  const int m = s.rows();
  Form3 d(m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k) {
        const double v = s(j, k).d(i) + s(k, i).d(j) + s(i, j).d(k);
        d(i, j, k) = v;
        d(j, k, i) = v;
        d(k, i, j) = v;
        d(j, i, k) = -v;
        d(i, k, j) = -v;
        d(k, j, i) = -v;
      }
  return d;
}

Form3 schouten_square(const JetMatrix& p) {
  const int m = p.rows();
  Form3 r(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        double s = 0.0;
        for (int l = 0; l < m; ++l)
          s += p(l, i).value() * p(j, k).d(l) + p(l, j).value() * p(k, i).d(l) + p(l, k).value() * p(i, j).d(l);
        r(i, j, k) = 2.0 * s;
      }
  return r;
}

Vector nijenhuis_endo(const JetMatrix& a, std::span<const Jet> x, std::span<const Jet> y) {
  const JetVector ax = a * x;
  const JetVector ay = a * y;
  const RealMatrix av = values(a);
  return lie_bracket(ax, ay) - av * lie_bracket(x, ay) - av * lie_bracket(ax, y) + av * (av * lie_bracket(x, y));
}

Vector schouten_concomitant(const JetMatrix& p, const JetMatrix& a, std::span<const Jet> alpha,
                            std::span<const Jet> x) {
  const JetVector alpha_a = compose(alpha, a);
  const JetVector ax = a * x;
  const Vector inner = lie_derivative(x, alpha_a) - lie_derivative(ax, alpha);
  const JetVector z = sharp_pi(p, alpha);
  return sharp_pi(values(p), std::span<const double>(inner)) - lie_derivative_endo(a, z, x);
}

JetMatrix associated_form(const JetMatrix& s, const JetMatrix& a) {
  return a.transposed() * s;
}

Form3 wedge(std::span<const double> a, const RealMatrix& b) {
  const int m = b.rows();
  require_dim(a.size(), sz(m));
  Form3 r(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        r(i, j, k) = a[sz(i)] * b(j, k) - a[sz(j)] * b(i, k) + a[sz(k)] * b(i, j);
  return r;
}

Vector interior_xy(const Form3& phi, std::span<const double> x, std::span<const double> y) {
  const int m = phi.dim();
  Vector r(sz(m), 0.0);
  for (int i = 0; i < m; ++i) {
    if (x[sz(i)] == 0.0) continue;
    for (int j = 0; j < m; ++j) {
      if (y[sz(j)] == 0.0) continue;
      const double f = x[sz(i)] * y[sz(j)];
      for (int k = 0; k < m; ++k) r[sz(k)] += f * phi(i, j, k);
    }
  }
  return r;
}

double sigma_assoc(const RealMatrix& s, const RealMatrix& a, std::span<const double> x, std::span<const double> y) {
  const Vector ax = a * x;
  return dot(std::span<const double>(ax), std::span<const double>(s * y));
}

Vector lie_bracket(const VectorField& x, const VectorField& y, const Point& p) {
  const auto c = lift_point(p);
  return lie_bracket(x.eval(c), y.eval(c));
}

Vector lie_derivative_oneform(const VectorField& x, const OneForm& a, const Point& p) {
  const auto c = lift_point(p);
  return lie_derivative(x.eval(c), a.eval(c));
}

RealMatrix exterior_derivative(const OneForm& a, const Point& p) {
  const auto c = lift_point(p);
  return exterior_derivative(a.eval(c));
}

Form3 exterior_derivative(const TwoForm& s, const Point& p) {
  const auto c = lift_point(p);
  return exterior_derivative(s.eval(c));
}

Form3 schouten_square(const Bivector& pi, const Point& p) {
  const auto c = lift_point(p);
  return schouten_square(pi.eval(c));
}

Vector nijenhuis_endo(const Endomorphism& a, const VectorField& x, const VectorField& y, const Point& p) {
  const auto c = lift_point(p);
  return nijenhuis_endo(a.eval(c), x.eval(c), y.eval(c));
}

Vector schouten_concomitant(const Bivector& pi, const Endomorphism& a, const OneForm& alpha,
                            const VectorField& x, const Point& p) {
  const auto c = lift_point(p);
  return schouten_concomitant(pi.eval(c), a.eval(c), alpha.eval(c), x.eval(c));
}

double antisymmetry_defect(const RealMatrix& m) {
  double d = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) d = std::max(d, std::abs(m(i, j) + m(j, i)));
  return d;
}

double antisymmetry_defect(const Form3& f) {
  const int m = f.dim();
  double d = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const double v = f(i, j, k);
        d = std::max({d, std::abs(v + f(j, i, k)), std::abs(v + f(i, k, j)), std::abs(v + f(k, j, i))});
      }
  return d;
}

double max_abs(const Form3& f) { return max_abs(f.data()); }

}  // namespace ggv
