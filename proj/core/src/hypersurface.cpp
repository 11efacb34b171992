#include "ggv/hypersurface.hpp"

#include <cmath>

#include "ggv/error.hpp"

namespace ggv {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

constexpr double kRadialThreshold = 1e-6;
constexpr double kRankEps = 1e-12;

template <class T>
std::vector<T> column(const Matrix<T>& a, int c) {
  std::vector<T> v;
  v.reserve(sz(a.rows()));
  for (int i = 0; i < a.rows(); ++i) v.push_back(a(i, c));
  return v;
}

/// Normal, frame-coordinate F, Z, xi and induced metric from ambient values along N.
template <class T>
struct Induced {
  std::vector<T> nu;
  Matrix<T> f, h;
  std::vector<T> z, xi;
};

template <class T>
std::vector<T> unit_normal(const Matrix<T>& e, const Matrix<T>& g, std::span<const T> x, bool flip) {
  const int m = e.rows();
  const int k = e.cols();
  // c_i = det[E | e_i] annihilates the frame, and det[E | G^-1 c] = c^t G^-1 c > 0.
  std::vector<T> c(sz(m), T(0.0));
  for (int i = 0; i < m; ++i) {
    Matrix<T> sq(m, m, T(0.0));
    for (int r = 0; r < m; ++r) {
      for (int a = 0; a < k; ++a) sq(r, a) = e(r, a);
      sq(r, k) = T(r == i ? 1.0 : 0.0);
    }
    c[sz(i)] = determinant(sq);
  }
  double frame_scale = 1.0;
  for (int a = 0; a < k; ++a) {
    double s = 0.0;
    for (int r = 0; r < m; ++r) s += value_of(e(r, a)) * value_of(e(r, a));
    frame_scale *= s;
  }
  double c2 = 0.0;
  for (const T& ci : c) c2 += value_of(ci) * value_of(ci);
  if (!(c2 > kRankEps * frame_scale)) throw RankDeficient("tangent frame of the hypersurface is degenerate");

  using std::sqrt;
  const std::vector<T> n = inverse(g) * c;
  const T len = sqrt(dot(c, n));
  double radial = 0.0;
  for (int i = 0; i < m; ++i) radial += value_of(c[sz(i)]) * value_of(x[sz(i)]);
  radial /= value_of(len);
  double sign = 1.0;
  if (std::abs(radial) > kRadialThreshold && radial < 0.0) sign = -1.0;
  if (flip) sign = -sign;
  std::vector<T> nu;
  for (const T& ni : n) nu.push_back(sign * ni / len);
  return nu;
}

template <class T>
Induced<T> induce(const Matrix<T>& e, const Matrix<T>& g, const Matrix<T>& j, std::span<const T> x, bool flip) {
  Induced<T> r;
  r.nu = unit_normal(e, g, x, flip);
  const Matrix<T> eg = e.transposed() * g;
  r.h = eg * e;
  const Matrix<T> hinv = inverse(r.h);
  const std::vector<T> zamb = -(j * r.nu);
  r.xi = eg * zamb;
  r.z = hinv * r.xi;
  r.f = hinv * (eg * (j * e));
  return r;
}

struct AlongN {
  std::vector<Jet> u, x;
  JetMatrix e;
  Point xv;
};

AlongN along(const Hypersurface& n, const Point& u) {
  AlongN a;
  a.u = lift_point(u);
  a.x = n.point_jets(a.u);
  a.e = n.frame_jets(a.u);
  a.xv = values(a.x);
  return a;
}

RealMatrix zero_matrix(int m) { return RealMatrix(m, m, 0.0); }

InducedContact to_contact(Induced<Jet> in) {
  return {std::move(in.f), std::move(in.z), std::move(in.xi), std::move(in.h)};
}

}  // namespace

Hypersurface::Hypersurface(std::vector<Expression> param, Chart param_chart)
    : param_(std::move(param)), param_chart_(std::move(param_chart)) {
  const int m = ambient_dim();
  if (param_chart_.dim != m - 1) throw DimensionMismatch("parameter chart must have dimension m - 1");
  for (const Expression& p : param_)
    if (p.max_coordinate() > m - 1) throw DimensionMismatch("hypersurface parameter index exceeds m - 1");
  frame_.assign(sz(m), std::vector<Expression>(sz(m - 1)));
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < m - 1; ++a) {
      const Expression d = differentiate(param_[sz(i)], a + 1, m - 1);
      frame_[sz(i)][sz(a)] = d.is_coordinate_free() ? fold_constants(d) : d;
    }
}

Hypersurface Hypersurface::rescaled(double k) const {
  std::vector<Expression> xs;
  for (int a = 1; a <= dim(); ++a) xs.push_back(Expression::constant(k) * Expression::coordinate(a));
  std::vector<Expression> p;
  for (const Expression& e : param_) p.push_back(substitute(e, xs));
  Chart c = param_chart_;
  for (auto& [lo, hi] : c.box) {
    lo /= k;
    hi /= k;
    if (lo > hi) std::swap(lo, hi);
  }
  if (c.exclusion) c.exclusion = substitute(*c.exclusion, xs);
  Hypersurface r(std::move(p), std::move(c));
  r.flip_normal = flip_normal;
  return r;
}

std::vector<Jet> Hypersurface::point_jets(std::span<const Jet> u) const {
  std::vector<Jet> x;
  x.reserve(param_.size());
  for (const Expression& e : param_) x.push_back(e.eval(u));
  return x;
}

JetMatrix Hypersurface::frame_jets(std::span<const Jet> u) const {
  const int m = ambient_dim();
  JetMatrix e(m, m - 1, Jet(0.0));
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < m - 1; ++a) e(i, a) = frame_[sz(i)][sz(a)].eval(u);
  return e;
}

FrameNormal tangent_frame_normal(const Hypersurface& n, const SymmetricTwoTensor& gamma, const Point& u) {
  const AlongN a = along(n, u);
  const RealMatrix e = values(a.e);
  return {e, unit_normal<double>(e, gamma.values(a.xv), a.xv, n.flip_normal)};
}

InducedContact induced_contact(const Hypersurface& n, const SymmetricTwoTensor& gamma, const Endomorphism& j,
                               std::span<const Jet> u) {
  const std::vector<Jet> x = n.point_jets(u);
  return to_contact(induce<Jet>(n.frame_jets(u), gamma.eval(x), j.eval(x), x, n.flip_normal));
}

InducedContact induced_contact(const Hypersurface& n, const SymmetricTwoTensor& gamma, const Endomorphism& j,
                               const Point& u) {
  const auto c = lift_point(u);
  return induced_contact(n, gamma, j, c);
}

JetMatrix fundamental_form(const InducedContact& c) { return c.f.transposed() * c.h; }

double pullback_check(const Hypersurface& n, const SymmetricTwoTensor& gamma, const Endomorphism& j,
                      const Point& u) {
  const AlongN a = along(n, u);
  const RealMatrix e = values(a.e);
  const RealMatrix omega = kahler_form(gamma.values(a.xv), j.values(a.xv));
  const RealMatrix xi = values(fundamental_form(induced_contact(n, gamma, j, u)));
  return max_abs(e.transposed() * omega * e - xi);
}

CheckReport check_crf(const Hypersurface& n, const SymmetricTwoTensor& gamma, const Endomorphism& j,
                      const CheckOptions& opts) {
  const int k = n.dim();
  return run_pointwise("crf", {"condsupl1", "condsupl2", "cr_in_d", "cr_type"}, n.param_chart(), opts,
                       [&](const Point& u) {
                         const auto uj = lift_point(u);
                         const InducedContact c = induced_contact(n, gamma, j, uj);
                         const RealMatrix f = values(c.f);
                         const Vector z = values(c.z);
                         const Vector xi = values(c.xi);
                         RealMatrix lzf(k, k, 0.0);
                         for (int b = 0; b < k; ++b) {
                           std::vector<Jet> eb(sz(k), Jet(0.0));
                           eb[sz(b)] = Jet(1.0);
                           const Vector col = lie_derivative_endo(c.f, c.z, eb);
                           for (int a = 0; a < k; ++a) lzf(a, b) = col[sz(a)];
                         }
                         Residual s1, s2, in_d, type;
                         s1.add(f * lzf * f, zero_matrix(k));
                         s2.add(lzf, outer(z, compose(xi, lzf)));

                         const JetMatrix proj = -(c.f * c.f);
                         const JetMatrix fproj = c.f * proj;
                         for (int a = 0; a < k; ++a)
                           for (int b = a + 1; b < k; ++b) {
                             const auto x = column(proj, a);
                             const auto y = column(proj, b);
                             const auto fx = column(fproj, a);
                             const auto fy = column(fproj, b);
                             const Vector r = lie_bracket(x, y) - lie_bracket(fx, fy);
                             in_d.add(dot(xi, r), 0.0);
                             type.add(lie_bracket(fx, y) + lie_bracket(x, fy), f * r);
                           }
                         return std::vector<double>{s1.normalized(), s2.normalized(), in_d.normalized(),
                                                    type.normalized()};
                       });
}

CheckReport check_lee_hypersurface(const Hypersurface& n, const LeeForm& lee, const CheckOptions& opts) {
  if (lee.dim() != n.ambient_dim()) throw DimensionMismatch("Lee form does not match the ambient dimension");
  return run_pointwise("lee-hypersurface", {"lee_tangent"}, n.param_chart(), opts, [&](const Point& u) {
    const AlongN a = along(n, u);
    const Vector w = values(lee.eval(lift_point(a.xv)));
    const Vector pulled = values(a.e).transposed() * w;
    Residual r;
    r.add(pulled, Vector(pulled.size(), 0.0));
    return std::vector<double>{r.normalized()};
  });
}

CheckReport check_lee1(const Hypersurface& n, const GHermitian& h, const LeeForm& lee, const CheckOptions& opts) {
  if (h.dim() != n.ambient_dim() || lee.dim() != n.ambient_dim())
    throw DimensionMismatch("ambient data does not match the hypersurface");
  const int k = n.dim();
  return run_pointwise("lee1", {"lee_tangent", "lee1_plus", "lee1_minus"}, n.param_chart(), opts,
                       [&](const Point& u) {
                         const AlongN a = along(n, u);
                         const RealMatrix e = values(a.e);
                         const auto xj = lift_point(a.xv);
                         const HermitianJets hj = eval_hermitian(h, xj);
                         const RealMatrix g = values(hj.gamma);
                         const Vector w = values(lee.eval(xj));
                         const Form3 dpsi = exterior_derivative(hj.psi);
                         const auto [jp, jm] = j_pm(hj.a, hj.p, hj.gamma, hj.psi);

                         Residual tangent;
                         const Vector pulled = e.transposed() * w;
                         tangent.add(pulled, Vector(pulled.size(), 0.0));
                         std::vector<double> out{tangent.normalized()};
                         for (int s = 0; s < 2; ++s) {
                           const JetMatrix& jj = s == 0 ? jp : jm;
                           const double sg = s == 0 ? 1.0 : -1.0;
                           const RealMatrix jv = values(jj);
                           const Induced<double> in = induce<double>(e, g, jv, a.xv, n.flip_normal);
                           const Form3 theta =
                               (dpsi + sg * dc_omega(exterior_derivative(kahler_form(hj.gamma, jj)), jv)).restricted(e);
                           const RealMatrix xi_form = in.f.transposed() * in.h;
                           const double w_nu = dot(w, in.nu);
                           RealMatrix lhs(k, k, 0.0), rhs(k, k, 0.0);
                           for (int p = 0; p < k; ++p)
                             for (int q = 0; q < k; ++q) {
                               lhs(p, q) = w_nu * xi_form(p, q);
                               double c = 0.0;
                               for (int l = 0; l < k; ++l) c += in.z[sz(l)] * theta(l, p, q);
                               rhs(p, q) = -sg * c;
                             }
                           Residual r;
                           r.add(lhs, rhs);
                           out.push_back(r.normalized());
                         }
                         return out;
                       });
}

CheckReport check_closed_fundamental(const Hypersurface& n, const SymmetricTwoTensor& gamma, const Endomorphism& j,
                                     const CheckOptions& opts) {
  const int m = n.ambient_dim();
  return run_pointwise(
      "closed-fundamental", {"ambient_d_omega", "ambient_nijenhuis", "closed_fundamental"}, n.param_chart(), opts,
      [&](const Point& u) {
        const AlongN a = along(n, u);
        const auto xj = lift_point(a.xv);
        const JetMatrix jj = j.eval(xj);
        Residual d_omega, nij, closed;
        d_omega.add(exterior_derivative(kahler_form(gamma.eval(xj), jj)), Form3(m));
        for (int p = 0; p < m; ++p)
          for (int q = p + 1; q < m; ++q) {
            std::vector<Jet> ep(sz(m), Jet(0.0)), eq(sz(m), Jet(0.0));
            ep[sz(p)] = Jet(1.0);
            eq[sz(q)] = Jet(1.0);
            nij.add_defect(nijenhuis_endo(jj, ep, eq));
          }
        const JetMatrix xi = fundamental_form(induced_contact(n, gamma, j, a.u));
        closed.add(exterior_derivative(xi), Form3(n.dim()));
        return std::vector<double>{d_omega.normalized(), nij.normalized(), closed.normalized()};
      });
}

}  // namespace ggv
