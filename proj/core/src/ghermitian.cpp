#include "ggv/ghermitian.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "ggv/error.hpp"
#include "ggv/harness/sampling.hpp"

namespace ggv {

namespace {

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

// Small expression-matrix algebra for the one place where components are synthesized.
using ExprMat = std::vector<std::vector<Expression>>;

bool is_one(const Expression& e) { return e.is_constant() && e.constant_value() == 1.0; }

Expression e_add(const Expression& a, const Expression& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() && b.is_constant()) return Expression::constant(a.constant_value() + b.constant_value());
  return a + b;
}

Expression e_neg(const Expression& a) {
  if (a.is_constant()) return Expression::constant(a.is_zero() ? 0.0 : -a.constant_value());
  return -a;
}

Expression e_mul(const Expression& a, const Expression& b) {
  if (a.is_zero() || b.is_zero()) return Expression::constant(0.0);
  if (is_one(a)) return b;
  if (is_one(b)) return a;
  if (a.is_constant() && b.is_constant()) return Expression::constant(a.constant_value() * b.constant_value());
  if (a.is_constant() && a.constant_value() == -1.0) return e_neg(b);
  if (b.is_constant() && b.constant_value() == -1.0) return e_neg(a);
  return a * b;
}

ExprMat zeros(int m) { return ExprMat(sz(m), std::vector<Expression>(sz(m), Expression::constant(0.0))); }

ExprMat mat_mul(const ExprMat& a, const ExprMat& b) {
  const int m = static_cast<int>(a.size());
  ExprMat c = zeros(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Expression s = Expression::constant(0.0);
      for (int k = 0; k < m; ++k) s = e_add(s, e_mul(a[sz(i)][sz(k)], b[sz(k)][sz(j)]));
      c[sz(i)][sz(j)] = s;
    }
  return c;
}

ExprMat mat_lin(double ca, const ExprMat& a, double cb, const ExprMat& b) {
  const int m = static_cast<int>(a.size());
  ExprMat c = zeros(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      c[sz(i)][sz(j)] = e_add(e_mul(Expression::constant(ca), a[sz(i)][sz(j)]),
                              e_mul(Expression::constant(cb), b[sz(i)][sz(j)]));
  return c;
}

ExprMat transpose(const ExprMat& a) {
  const int m = static_cast<int>(a.size());
  ExprMat t = zeros(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t[sz(j)][sz(i)] = a[sz(i)][sz(j)];
  return t;
}

/// Laplace expansion along the first row, skipping zero entries.
Expression determinant(const ExprMat& a) {
  const int m = static_cast<int>(a.size());
  if (m == 1) return a[0][0];
  Expression det = Expression::constant(0.0);
  for (int j = 0; j < m; ++j) {
    if (a[0][sz(j)].is_zero()) continue;
    ExprMat minor;
    for (int r = 1; r < m; ++r) {
      std::vector<Expression> row;
      for (int c = 0; c < m; ++c)
        if (c != j) row.push_back(a[sz(r)][sz(c)]);
      minor.push_back(std::move(row));
    }
    const Expression term = e_mul(a[0][sz(j)], determinant(minor));
    det = j % 2 == 0 ? e_add(det, term) : e_add(det, e_neg(term));
  }
  return det;
}

ExprMat inverse(const ExprMat& a) {
  const int m = static_cast<int>(a.size());
  bool diagonal = true;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) diagonal = diagonal && (i == j || a[sz(i)][sz(j)].is_zero());
  ExprMat inv = zeros(m);
  if (diagonal) {
    for (int i = 0; i < m; ++i) {
      const Expression& d = a[sz(i)][sz(i)];
      if (d.kind() == Expression::Kind::div && is_one(d.left())) inv[sz(i)][sz(i)] = d.right();
      else inv[sz(i)][sz(i)] = Expression::constant(1.0) / d;
    }
    return inv;
  }
  const Expression det = determinant(a);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      ExprMat minor;
      for (int r = 0; r < m; ++r) {
        if (r == i) continue;
        std::vector<Expression> row;
        for (int c = 0; c < m; ++c)
          if (c != j) row.push_back(a[sz(r)][sz(c)]);
        minor.push_back(std::move(row));
      }
      Expression cof = determinant(minor);
      if ((i + j) % 2 == 1) cof = e_neg(cof);
      if (!cof.is_zero()) inv[sz(j)][sz(i)] = cof / det;
    }
  return inv;
}

template <class M>
ExprMat to_exprmat(const M& t) {
  const int m = t.dim();
  ExprMat r = zeros(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) r[sz(i)][sz(j)] = t.at(i, j);
  return r;
}

Expression tidy(const Expression& e) { return e.is_constant() ? e : fold_constants(e); }

Form3 scaled3(double s, Form3 f) { return f *= s; }

}  // namespace

GHermitian from_quadruple(const Quadruple& q, const Chart& chart) {
  const int m = chart.dim;
  if (q.gamma.dim() != m || q.psi.dim() != m || q.j_plus.dim() != m || q.j_minus.dim() != m)
    throw DimensionMismatch("quadruple components do not match the chart dimension");
  const ExprMat g = to_exprmat(q.gamma);
  const ExprMat psi = to_exprmat(q.psi);
  const ExprMat jp = to_exprmat(q.j_plus);
  const ExprMat jm = to_exprmat(q.j_minus);
  const ExprMat ginv = inverse(g);
  const ExprMat p = mat_mul(mat_lin(-0.5, jp, 0.5, jm), ginv);
  const ExprMat a = mat_lin(0.5, mat_lin(1.0, jp, 1.0, jm), -1.0, mat_mul(p, psi));
  const ExprMat e = mat_lin(1.0, g, -1.0, psi);
  const ExprMat s = mat_lin(-1.0, mat_mul(e, jp), -1.0, mat_mul(transpose(a), e));

  GHermitian h;
  h.s.chart = chart;
  h.s.a = Endomorphism(m);
  h.s.pi = Bivector(m);
  h.s.sigma = TwoForm(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      h.s.a.set(i, j, tidy(a[sz(i)][sz(j)]));
      if (i < j) {
        h.s.pi.set(i, j, tidy(p[sz(i)][sz(j)]));
        h.s.sigma.set(i, j, tidy(s[sz(i)][sz(j)]));
      }
    }
  h.metric = {q.gamma, q.psi};
  return h;
}

HermitianJets eval_hermitian(const GHermitian& h, std::span<const Jet> coords) {
  return {h.s.a.eval(coords), h.s.pi.eval(coords), h.s.sigma.eval(coords), h.metric.gamma.eval(coords),
          h.metric.psi.eval(coords)};
}

template <class T>
Matrix<T> sharp_g_block(const Matrix<T>& gamma, const Matrix<T>& psi) {
  const int m = gamma.rows();
  const Matrix<T> ginv = inverse(gamma);
  const Matrix<T> phi = ginv * psi;
  const Matrix<T> beta = gamma * (Matrix<T>::identity(m) - phi * phi);
  Matrix<T> b(2 * m, 2 * m, T(0.0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      b(i, j) = phi(i, j);
      b(i, m + j) = ginv(i, j);
      b(m + i, j) = beta(i, j);
      b(m + i, m + j) = phi(j, i);
    }
  return b;
}

template RealMatrix sharp_g_block<double>(const RealMatrix&, const RealMatrix&);
template JetMatrix sharp_g_block<Jet>(const JetMatrix&, const JetMatrix&);

RealMatrix sharp_g_matrix(const GMetric& m, const Point& p) {
  return sharp_g_block(m.gamma.values(p), m.psi.values(p));
}

RealMatrix neutral_matrix(int dim) {
  RealMatrix n(2 * dim, 2 * dim, 0.0);
  for (int i = 0; i < dim; ++i) {
    n(i, dim + i) = 1.0;
    n(dim + i, i) = 1.0;
  }
  return n;
}

RealMatrix g_form_matrix(const RealMatrix& sharp_g) {
  return sharp_g.transposed() * neutral_matrix(sharp_g.rows() / 2);
}

double min_g_eigenvalue(const GMetric& m, const Point& p) {
  const RealMatrix g = g_form_matrix(sharp_g_matrix(m, p));
  const int n = g.rows();
  Eigen::MatrixXd e(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e(i, j) = 0.5 * (g(i, j) + g(j, i));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(e, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

CheckReport check_metric_axioms(const GMetric& m, const Chart& chart, const CheckOptions& opts) {
  const int d = chart.dim;
  const RealMatrix n = neutral_matrix(d);
  return run_pointwise("metric-axioms", {"sharp_g_square", "g_isometry", "positivity"}, chart, opts,
                       [&](const Point& p) {
                         const RealMatrix sg = sharp_g_matrix(m, p);
                         Residual sq, iso;
                         sq.add(sg * sg, RealMatrix::identity(2 * d));
                         iso.add(sg.transposed() * n * sg, n);
                         const double pos = leading_minors_positive(g_form_matrix(sg)) ? 0.0 : 1.0;
                         return std::vector<double>{sq.normalized(), iso.normalized(), pos};
                       });
}

CheckReport check_compatibility(const GHermitian& h, const CheckOptions& opts) {
  return run_pointwise("compatibility", {"commutation", "g_skew"}, h.chart(), opts, [&](const Point& p) {
    const auto c = lift_point(p);
    const HermitianJets j = eval_hermitian(h, c);
    const RealMatrix phi = values(phi_block(j.a, j.p, j.s));
    const RealMatrix sg = sharp_g_block(values(j.gamma), values(j.psi));
    const RealMatrix g = g_form_matrix(sg);
    Residual comm, skew;
    comm.add(sg * phi, phi * sg);
    skew.add(phi.transposed() * g, -(g * phi));
    return std::vector<double>{comm.normalized(), skew.normalized()};
  });
}

std::pair<RealMatrix, RealMatrix> extract_j_pm(const GHermitian& h, const Point& p) {
  const auto c = lift_point(p);
  const HermitianJets j = eval_hermitian(h, c);
  return j_pm(values(j.a), values(j.p), values(j.gamma), values(j.psi));
}

GMetric transform_conformal_metric(const GMetric& m, const ScalarField& tau) {
  const Expression f = exp_of_negative(tau);
  return {scale(f, m.gamma), scale(f, m.psi)};
}

GHermitian transform_conformal(const GHermitian& h, const ScalarField& tau) {
  return {transform_conformal(h.s, tau), transform_conformal_metric(h.metric, tau)};
}

CheckReport conformal_invariance_j(const GHermitian& h, const ScalarField& tau, const CheckOptions& opts) {
  const GHermitian t = transform_conformal(h, tau);
  return run_pointwise("conformal-invariance-j", {"j_plus", "j_minus"}, h.chart(), opts, [&](const Point& p) {
    const auto [jp, jm] = extract_j_pm(h, p);
    const auto [tp, tm] = extract_j_pm(t, p);
    Residual rp, rm;
    rp.add(jp, tp);
    rm.add(jm, tm);
    return std::vector<double>{rp.normalized(), rm.normalized()};
  });
}

RealMatrix complementary_structure(const GHermitian& h, const Point& p) {
  const auto c = lift_point(p);
  const HermitianJets j = eval_hermitian(h, c);
  return sharp_g_block(values(j.gamma), values(j.psi)) * values(phi_block(j.a, j.p, j.s));
}

double complementary_residual(const GHermitian& h, const Point& p) {
  const auto c = lift_point(p);
  const HermitianJets j = eval_hermitian(h, c);
  const RealMatrix phi = values(phi_block(j.a, j.p, j.s));
  const RealMatrix sg = sharp_g_block(values(j.gamma), values(j.psi));
  return max_abs(-(phi * (sg * phi)) - sg);
}

Form3 dc_omega(const Form3& d_omega, const RealMatrix& j) { return -1.0 * d_omega.pulled_by(j); }

Form3 type_30_defect(const Form3& phi, const RealMatrix& j) {
  const int m = phi.dim();
  // Contract J into one slot at a time.
  auto slot = [&](const Form3& f, int which) {
    Form3 r(m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) {
          double s = 0.0;
          for (int l = 0; l < m; ++l) {
            if (which == 0) s += j(l, a) * f(l, b, c);
            else if (which == 1) s += j(l, b) * f(a, l, c);
            else s += j(l, c) * f(a, b, l);
          }
          r(a, b, c) = s;
        }
    return r;
  };
  const Form3 j0 = slot(phi, 0);
  const Form3 i_j = slot(j0, 1) + slot(j0, 2) + slot(slot(phi, 1), 2);
  return phi - i_j;
}

double type_component_30_03(const Form3& phi, const RealMatrix& j) { return max_abs(type_30_defect(phi, j)); }

Christoffel connection_coeffs(ConnectionKind kind, const JetMatrix& gamma, const JetMatrix& psi,
                              std::span<const double> lee) {
  const int m = gamma.rows();
  const RealMatrix g = values(gamma);
  const RealMatrix ginv = inverse(g);
  Christoffel c(m);
  // Lowered symbols first: Gamma_{l,ab} = (d_a g_lb + d_b g_la - d_l g_ab) / 2.
  Form3 low(m);
  for (int l = 0; l < m; ++l)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) low(l, a, b) = 0.5 * (gamma(l, b).d(a) + gamma(l, a).d(b) - gamma(a, b).d(l));

  const bool weyl = kind == ConnectionKind::weyl || kind == ConnectionKind::weyl_bismut_plus ||
                    kind == ConnectionKind::weyl_bismut_minus;
  double torsion_sign = 0.0;
  if (kind == ConnectionKind::bismut_plus || kind == ConnectionKind::weyl_bismut_plus) torsion_sign = 1.0;
  if (kind == ConnectionKind::bismut_minus || kind == ConnectionKind::weyl_bismut_minus) torsion_sign = -1.0;
  if (weyl && static_cast<int>(lee.size()) != m) throw DimensionMismatch("Lee form does not match the metric");

  if (torsion_sign != 0.0) {
    Form3 h = exterior_derivative(psi);
    if (weyl) h -= wedge(lee, values(psi));
    for (int l = 0; l < m; ++l)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) low(l, a, b) += torsion_sign * 0.5 * h(a, b, l);
  }
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double s = 0.0;
        for (int l = 0; l < m; ++l) s += ginv(i, l) * low(l, a, b);
        c(i, a, b) = s;
      }
  if (weyl) {
    const Vector sharp_lee = ginv * Vector(lee.begin(), lee.end());
    for (int i = 0; i < m; ++i)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          double w = 0.5 * g(a, b) * sharp_lee[sz(i)];
          if (i == b) w -= 0.5 * lee[sz(a)];
          if (i == a) w -= 0.5 * lee[sz(b)];
          c(i, a, b) += w;
        }
  }
  return c;
}

Vector covariant_derivative(const Christoffel& c, std::span<const Jet> x, std::span<const Jet> y) {
  const int m = c.dim();
  Vector r(sz(m), 0.0);
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int a = 0; a < m; ++a) {
      const double xa = x[sz(a)].value();
      if (xa == 0.0) continue;
      s += xa * y[sz(i)].d(a);
      for (int b = 0; b < m; ++b) s += c(i, a, b) * xa * y[sz(b)].value();
    }
    r[sz(i)] = s;
  }
  return r;
}

Form3 cov_deriv_endo(const Christoffel& c, const JetMatrix& j) {
  const int m = c.dim();
  Form3 r(m);
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        double s = j(i, b).d(a);
        for (int k = 0; k < m; ++k) s += c(i, a, k) * j(k, b).value() - j(i, k).value() * c(k, a, b);
        r(i, a, b) = s;
      }
  return r;
}

Form3 cov_deriv_metric(const Christoffel& c, const JetMatrix& gamma) {
  const int m = c.dim();
  Form3 r(m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int cc = 0; cc < m; ++cc) {
        double s = gamma(b, cc).d(a);
        for (int k = 0; k < m; ++k) s -= c(k, a, b) * gamma(k, cc).value() + c(k, a, cc) * gamma(b, k).value();
        r(a, b, cc) = s;
      }
  return r;
}

const char* criterion_name(GkCriterion c) {
  switch (c) {
    case GkCriterion::gualtieri: return "gualtieri";
    case GkCriterion::crf: return "crf";
    case GkCriterion::bismut: return "bismut";
  }
  return "?";
}

const char* criterion_name(ConfGkCriterion c) {
  switch (c) {
    case ConfGkCriterion::conformal_form: return "conformal_form";
    case ConfGkCriterion::weyl: return "weyl";
    case ConfGkCriterion::weyl_bismut: return "weyl_bismut";
  }
  return "?";
}

namespace {

struct KahlerFrame {
  int m = 0;
  JetMatrix gamma, psi;
  RealMatrix g, ginv, psiv;
  JetMatrix jets[2];  // J+, J-
  RealMatrix j[2];
  Form3 dpsi;

  KahlerFrame(const GHermitian& h, const Point& p) : m(h.dim()) {
    const auto c = lift_point(p);
    const HermitianJets hj = eval_hermitian(h, c);
    gamma = hj.gamma;
    psi = hj.psi;
    g = values(gamma);
    ginv = inverse(g);
    psiv = values(psi);
    auto [jp, jm] = j_pm(hj.a, hj.p, hj.gamma, hj.psi);
    jets[0] = std::move(jp);
    jets[1] = std::move(jm);
    j[0] = values(jets[0]);
    j[1] = values(jets[1]);
    dpsi = exterior_derivative(psi);
  }

  double nijenhuis_j(int k) const {
    Residual r;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        const JetVector x = values_to_jets(a);
        const JetVector y = values_to_jets(b);
        r.add_defect(nijenhuis_endo(jets[k], x, y));
      }
    return r.normalized();
  }

  JetVector values_to_jets(int i) const {
    JetVector v(sz(m), Jet(0.0));
    v[sz(i)] = Jet(1.0);
    return v;
  }

  Form3 d_omega(int k) const { return exterior_derivative(kahler_form(gamma, jets[k])); }

  /// sign * #_gamma[(i(e_a ^ e_b) h) o J + i(e_a ^ J e_b) h] / 2 as (i, a, b), the right side of the crf equation
  /// with sign = -1 for J+ and +1 for J-.
  Form3 crf_rhs(const Form3& h, int k, double sign) const {
    const RealMatrix& jj = j[k];
    Form3 r(m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        Vector cvec(sz(m), 0.0);
        for (int kk = 0; kk < m; ++kk) {
          double s = 0.0;
          for (int l = 0; l < m; ++l) s += h(a, b, l) * jj(l, kk) + jj(l, b) * h(a, l, kk);
          cvec[sz(kk)] = s;
        }
        const Vector up = ginv * cvec;
        for (int i = 0; i < m; ++i) r(i, a, b) = 0.5 * sign * up[sz(i)];
      }
    return r;
  }
};

double sign_of(int k) { return k == 0 ? 1.0 : -1.0; }

}  // namespace

CheckReport check_gk(const GHermitian& h, GkCriterion criterion, const CheckOptions& opts) {
  std::vector<std::string> ids{"nijenhuis_J_plus", "nijenhuis_J_minus"};
  switch (criterion) {
    case GkCriterion::gualtieri: ids.insert(ids.end(), {"gualtieri_plus", "gualtieri_minus"}); break;
    case GkCriterion::crf: ids.insert(ids.end(), {"crf_plus", "crf_minus"}); break;
    case GkCriterion::bismut:
      ids.insert(ids.end(), {"bismut_plus", "bismut_minus", "type30_plus", "type30_minus"});
      break;
  }
  const std::string suite = std::string("gk/") + criterion_name(criterion);
  return run_pointwise(suite, ids, h.chart(), opts, [&](const Point& p) {
    const KahlerFrame f(h, p);
    std::vector<double> out{f.nijenhuis_j(0), f.nijenhuis_j(1)};
    for (int k = 0; k < 2; ++k) {
      const double sg = sign_of(k);
      Residual r;
      switch (criterion) {
        case GkCriterion::gualtieri:
          r.add(dc_omega(f.d_omega(k), f.j[k]), scaled3(-sg, f.dpsi));
          break;
        case GkCriterion::crf: {
          const Christoffel c = connection_coeffs(ConnectionKind::levi_civita, f.gamma, f.psi, {});
          r.add(cov_deriv_endo(c, f.jets[k]), f.crf_rhs(f.dpsi, k, -sg));
          break;
        }
        case GkCriterion::bismut: {
          const auto kind = k == 0 ? ConnectionKind::bismut_plus : ConnectionKind::bismut_minus;
          const Christoffel c = connection_coeffs(kind, f.gamma, f.psi, {});
          r.add(cov_deriv_endo(c, f.jets[k]), Form3(f.m));
          break;
        }
      }
      out.push_back(r.normalized());
    }
    if (criterion == GkCriterion::bismut)
      for (int k = 0; k < 2; ++k) {
        Residual r;
        r.add(f.dpsi, f.dpsi - type_30_defect(f.dpsi, f.j[k]));
        out.push_back(r.normalized());
      }
    return out;
  });
}

CheckReport check_conf_gk(const GHermitian& h, const LeeForm& lee, ConfGkCriterion criterion,
                          const CheckOptions& opts) {
  if (lee.dim() != h.dim()) throw DimensionMismatch("Lee form does not match the chart dimension");
  std::vector<std::string> ids{"nijenhuis_J_plus", "nijenhuis_J_minus"};
  const std::string name = criterion_name(criterion);
  ids.push_back(name + "_plus");
  ids.push_back(name + "_minus");
  return run_pointwise("conf-gk/" + name, ids, h.chart(), opts, [&](const Point& p) {
    const KahlerFrame f(h, p);
    const Vector w = values(lee.eval(lift_point(p)));
    std::vector<double> out{f.nijenhuis_j(0), f.nijenhuis_j(1)};
    const Form3 w_psi = wedge(w, f.psiv);
    const Form3 h_weyl = f.dpsi - w_psi;
    for (int k = 0; k < 2; ++k) {
      const double sg = sign_of(k);
      Residual r;
      switch (criterion) {
        case ConfGkCriterion::conformal_form: {
          const Form3 lhs = f.dpsi + scaled3(sg, dc_omega(f.d_omega(k), f.j[k]));
          const Vector wj = compose(w, f.j[k]);
          const Form3 rhs = w_psi - scaled3(sg, wedge(wj, values(kahler_form(f.gamma, f.jets[k]))));
          r.add(lhs, rhs);
          break;
        }
        case ConfGkCriterion::weyl: {
          const Christoffel c = connection_coeffs(ConnectionKind::weyl, f.gamma, f.psi, w);
          r.add(cov_deriv_endo(c, f.jets[k]), f.crf_rhs(h_weyl, k, -sg));
          break;
        }
        case ConfGkCriterion::weyl_bismut: {
          const auto kind = k == 0 ? ConnectionKind::weyl_bismut_plus : ConnectionKind::weyl_bismut_minus;
          const Christoffel c = connection_coeffs(kind, f.gamma, f.psi, w);
          r.add(cov_deriv_endo(c, f.jets[k]), Form3(f.m));
          break;
        }
      }
      out.push_back(r.normalized());
    }
    return out;
  });
}

Chart product_chart(const Chart& chart_n, double t_lo, double t_hi) {
  Chart c;
  c.dim = chart_n.dim + 1;
  c.box = chart_n.box;
  c.box.emplace_back(t_lo, t_hi);
  if (chart_n.exclusion) c.exclusion = substitute(*chart_n.exclusion, [&] {
    std::vector<Expression> xs;
    for (int i = 1; i <= chart_n.dim; ++i) xs.push_back(Expression::coordinate(i));
    return xs;
  }());
  return c;
}

Quadruple sasakian_product_quadruple(const AlmostContact& plus, const AlmostContact& minus,
                                     const SymmetricTwoTensor& gamma_n, const TwoForm& psi, const OneForm& kappa,
                                     const Chart& chart_n, const CheckOptions& opts) {
  const int m = chart_n.dim;
  const int n = m + 1;
  for (const AlmostContact* ac : {&plus, &minus})
    if (ac->f.dim() != m || ac->z.dim() != m || ac->xi.dim() != m)
      throw DimensionMismatch("almost contact data does not match the chart dimension");

  for (const Point& p : sample_points(chart_n, std::min(opts.points, 16), opts.seed)) {
    const auto c = lift_point(p);
    for (const AlmostContact* ac : {&plus, &minus}) {
      const RealMatrix f = values(ac->f.eval(c));
      const Vector z = values(ac->z.eval(c));
      const Vector xi = values(ac->xi.eval(c));
      RealMatrix rhs = -RealMatrix::identity(m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) rhs(i, j) += z[sz(i)] * xi[sz(j)];
      Residual sq, unit, fz;
      sq.add(f * f, rhs);
      unit.add(dot(xi, z), 1.0);
      fz.add_defect(f * z);
      if (sq.normalized() > opts.tol || unit.normalized() > opts.tol || fz.normalized() > opts.tol)
        throw AlgebraViolation("almost contact identities fail at a sampled point");
    }
  }

  // Rebind N-expressions to the first m coordinates so norm2 keeps its meaning on the product.
  std::vector<Expression> xs;
  for (int i = 1; i <= m; ++i) xs.push_back(Expression::coordinate(i));
  const auto lift = [&](const Expression& e) { return e.is_constant() ? e : substitute(e, xs); };

  Quadruple q;
  q.gamma = SymmetricTwoTensor(n);
  q.psi = TwoForm(n);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) q.gamma.set(i, j, lift(gamma_n.at(i, j)));
    for (int j = i + 1; j < m; ++j) q.psi.set(i, j, lift(psi.at(i, j)));
    q.psi.set(i, m, lift(kappa[i]));
  }
  q.gamma.set(m, m, Expression::constant(1.0));
  auto assemble = [&](const AlmostContact& ac) {
    Endomorphism j(n);
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < m; ++k) j.set(i, k, lift(ac.f.at(i, k)));
      j.set(i, m, lift(ac.z[i]));
      j.set(m, i, lift(e_neg(ac.xi[i])));
    }
    return j;
  };
  q.j_plus = assemble(plus);
  q.j_minus = assemble(minus);
  return q;
}

}  // namespace ggv
