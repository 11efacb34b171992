#include "ggv/gcs.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "ggv/error.hpp"
#include "ggv/geometry.hpp"
#include "ggv/harness/sampling.hpp"

namespace ggv {

namespace {

// Seeds of the random guard arguments; fixed so reports are reproducible.
constexpr std::uint64_t kGuardVectorSeed = 0x61A2D001;
constexpr std::uint64_t kGuardFormSeed = 0x61A2D002;
constexpr int kGuardCount = 5;

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

struct Arguments {
  std::vector<VectorField> vectors;
  std::vector<OneForm> forms;
};

Arguments battery(int m) {
  Arguments b;
  for (int i = 0; i < m; ++i) {
    b.vectors.push_back(VectorField::basis(i, m));
    b.forms.push_back(OneForm::basis(i, m));
  }
  for (auto& v : random_vector_fields(m, kGuardCount, kGuardVectorSeed)) b.vectors.push_back(std::move(v));
  for (auto& a : random_one_forms(m, kGuardCount, kGuardFormSeed)) b.forms.push_back(std::move(a));
  return b;
}

/// Jets of the structure and the argument battery at one point.
struct Frame {
  JetMatrix a, p, s;
  RealMatrix av, pv, sv;
  std::vector<JetVector> xs, alphas;
  int m = 0;

  Frame(const GcsData& d, const Arguments& args, const Point& pt) : m(d.dim()) {
    const auto c = lift_point(pt);
    a = d.a.eval(c);
    p = d.pi.eval(c);
    s = d.sigma.eval(c);
    av = values(a);
    pv = values(p);
    sv = values(s);
    for (const auto& v : args.vectors) xs.push_back(v.eval(c));
    for (const auto& f : args.forms) alphas.push_back(f.eval(c));
  }
};

double pairing(std::span<const double> a, std::span<const double> x) { return dot(a, x); }

/// Sum over cyclic permutations of dsigma(A., ., .) as a full array.
Form3 cyclic_a(const Form3& ds, const RealMatrix& a) {
  const int m = ds.dim();
  Form3 once(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        double v = 0.0;
        for (int l = 0; l < m; ++l) v += a(l, i) * ds(l, j, k);
        once(i, j, k) = v;
      }
  Form3 r(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) r(i, j, k) = once(i, j, k) + once(j, k, i) + once(k, i, j);
  return r;
}

/// Residuals of the four integrability conditions, with Lee-form right-hand sides when lee is given.
std::vector<double> condition_residuals(const Frame& f, const Vector* lee) {
  const int m = f.m;
  const RealMatrix id = RealMatrix::identity(m);
  std::vector<double> out;

  {  // Poisson
    Residual r;
    const Form3 lhs = schouten_square(f.p);
    Form3 rhs(m);
    if (lee) rhs = -2.0 * wedge(sharp_pi(f.pv, *lee), f.pv);
    r.add(lhs, rhs);
    out.push_back(r.normalized());
  }
  {  // Schouten concomitant
    Residual r;
    for (const auto& alpha : f.alphas) {
      const Vector sa = sharp_pi(f.pv, values(alpha));
      const Vector asa = f.av * sa;
      for (const auto& x : f.xs) {
        const Vector lhs = schouten_concomitant(f.p, f.a, alpha, x);
        Vector rhs(sz(m), 0.0);
        if (lee) {
          const Vector xv = values(x);
          const double wx = pairing(*lee, xv);
          const double wax = pairing(*lee, f.av * xv);
          rhs = scaled(wx, asa) - scaled(wax, sa);
        }
        r.add(lhs, rhs);
      }
    }
    out.push_back(r.normalized());
  }
  const Form3 ds = exterior_derivative(f.s);
  {  // Nijenhuis of A against d sigma
    Residual r;
    const RealMatrix id_a2 = id + f.av * f.av;
    const Vector slee = lee ? sharp_pi(f.pv, *lee) : Vector(sz(m), 0.0);
    for (std::size_t i = 0; i < f.xs.size(); ++i)
      for (std::size_t j = i + 1; j < f.xs.size(); ++j) {
        const Vector xv = values(f.xs[i]);
        const Vector yv = values(f.xs[j]);
        const Vector lhs = nijenhuis_endo(f.a, f.xs[i], f.xs[j]) - sharp_pi(f.pv, interior_xy(ds, xv, yv));
        Vector rhs(sz(m), 0.0);
        if (lee) {
          const double sxy = dot(std::span<const double>(xv), std::span<const double>(f.sv * yv));
          rhs = scaled(-sxy, slee) + scaled(pairing(*lee, xv), id_a2 * yv) - scaled(pairing(*lee, yv), id_a2 * xv);
        }
        r.add(lhs, rhs);
      }
    out.push_back(r.normalized());
  }
  {  // Associated form
    Residual r;
    const JetMatrix sa = associated_form(f.s, f.a);
    const Form3 lhs = exterior_derivative(sa) - cyclic_a(ds, f.av);
    Form3 rhs(m);
    if (lee) {
      const Vector lee_a = compose(*lee, f.av);
      rhs = -1.0 * (wedge(*lee, values(sa)) + wedge(lee_a, f.sv));
    }
    r.add(lhs, rhs);
    out.push_back(r.normalized());
  }
  return out;
}

double nijenhuis_phi_residual(const GcsData& d, const std::vector<BigSection>& sections, const Point& pt) {
  const auto c = lift_point(pt);
  const JetMatrix phi = phi_block(d.matrix(), c);
  std::vector<JetVector> sv;
  for (const auto& s : sections) sv.push_back(s.eval(c));
  Residual r;
  for (std::size_t i = 0; i < sv.size(); ++i)
    for (std::size_t j = i + 1; j < sv.size(); ++j) r.add_defect(nijenhuis_big(phi, sv[i], sv[j]));
  return r.normalized();
}

void require_dims(const GcsData& s) {
  if (s.a.dim() != s.dim() || s.pi.dim() != s.dim() || s.sigma.dim() != s.dim())
    throw DimensionMismatch("structure components do not match the chart dimension");
}

}  // namespace

CheckReport check_algebraic(const GcsData& s, const CheckOptions& opts) {
  require_dims(s);
  const int m = s.dim();
  return run_pointwise("algebraic", {"alg_pi", "alg_sigma", "alg_square"}, s.chart, opts, [&](const Point& pt) {
    const auto c = lift_point(pt);
    const RealMatrix a = values(s.a.eval(c));
    const RealMatrix p = values(s.pi.eval(c));
    const RealMatrix sg = values(s.sigma.eval(c));
    Residual r1, r2, r3;
    r1.add(a * p, p * a.transposed());
    r2.add(a.transposed() * sg, sg * a);
    r3.add(a * a, -RealMatrix::identity(m) - p * sg);
    return std::vector<double>{r1.raw(), r2.raw(), r3.raw()};
  });
}

CheckReport check_integrability(const GcsData& s, const CheckOptions& opts) {
  require_dims(s);
  const Arguments args = battery(s.dim());
  const auto sections = section_battery(s.dim());
  return run_pointwise("integrability", {"poisson", "concomitant", "nijenhuis_A", "associated_form", "nijenhuis_phi"},
                       s.chart, opts, [&](const Point& pt) {
                         auto out = condition_residuals(Frame(s, args, pt), nullptr);
                         out.push_back(nijenhuis_phi_residual(s, sections, pt));
                         return out;
                       });
}

CheckReport check_conformal_integrability(const GcsData& s, const LeeForm& lee, const CheckOptions& opts) {
  require_dims(s);
  if (lee.dim() != s.dim()) throw DimensionMismatch("Lee form does not match the chart dimension");
  const Arguments args = battery(s.dim());
  return run_pointwise("conf-integrability",
                       {"poisson_conf", "concomitant_conf", "nijenhuis_A_conf", "associated_form_conf"}, s.chart, opts,
                       [&](const Point& pt) {
                         const Vector w = values(lee.eval(lift_point(pt)));
                         return condition_residuals(Frame(s, args, pt), &w);
                       });
}

CheckReport check_ptiii_crosscheck(const GcsData& s, const ScalarField& tau, const CheckOptions& opts) {
  require_dims(s);
  const Arguments args = battery(s.dim());
  const int m = s.dim();
  return run_pointwise("ptiii-crosscheck", {"nijenhuis_A_dtau"}, s.chart, opts, [&](const Point& pt) {
    const Frame f(s, args, pt);
    const Jet t = tau.eval(lift_point(pt));
    Vector dt(sz(m));
    for (int i = 0; i < m; ++i) dt[sz(i)] = t.d(i);
    const Form3 ds = exterior_derivative(f.s);
    const Form3 dts = wedge(dt, f.sv);
    Residual r;
    for (std::size_t i = 0; i < f.xs.size(); ++i)
      for (std::size_t j = i + 1; j < f.xs.size(); ++j) {
        const Vector xv = values(f.xs[i]);
        const Vector yv = values(f.xs[j]);
        const Vector lhs = nijenhuis_endo(f.a, f.xs[i], f.xs[j]) - sharp_pi(f.pv, interior_xy(ds, xv, yv));
        const Vector rhs = -sharp_pi(f.pv, interior_xy(dts, xv, yv));
        r.add(lhs, rhs);
      }
    return std::vector<double>{r.normalized()};
  });
}

Expression exp_of(const ScalarField& tau) {
  if (tau.is_constant()) return Expression::constant(std::exp(tau.constant_value()));
  if (tau.kind() == Expression::Kind::apply && tau.function() == Function::ln) return tau.left();
  return apply(Function::exp, tau);
}

Expression exp_of_negative(const ScalarField& tau) {
  if (tau.is_constant()) return Expression::constant(std::exp(-tau.constant_value()));
  if (tau.kind() == Expression::Kind::apply && tau.function() == Function::ln)
    return Expression::constant(1.0) / tau.left();
  return apply(Function::exp, -tau);
}

GcsData transform_conformal(const GcsData& s, const ScalarField& tau) {
  GcsData t = s;
  t.pi = scale(exp_of(tau), s.pi);
  t.sigma = scale(exp_of_negative(tau), s.sigma);
  return t;
}

CheckReport check_lee_closed(const LeeForm& lee, const Chart& chart, const CheckOptions& opts) {
  if (lee.dim() != chart.dim) throw DimensionMismatch("Lee form does not match the chart dimension");
  return run_pointwise("lee-closed", {"lee_closed"}, chart, opts, [&](const Point& pt) {
    const RealMatrix d = exterior_derivative(lee.eval(lift_point(pt)));
    return std::vector<double>{max_abs(d)};
  });
}

RigidityReport check_rigidity_hypotheses(const GcsData& s, const CheckOptions& opts) {
  require_dims(s);
  const int m = s.dim();
  constexpr double kImagThreshold = 1e-8;
  constexpr double kRankThreshold = 1e-8;
  const double det_tol = opts.tol;
  RigidityReport rep;
  auto fail = [](Hypothesis& h, const Point& p, std::string why) {
    if (!h.holds) return;
    h.holds = false;
    h.witness = p;
    h.detail = std::move(why);
  };
  for (const Point& pt : sample_points(s.chart, opts.points, opts.seed)) {
    RealMatrix a, p, sg;
    try {
      const auto c = lift_point(pt);
      a = values(s.a.eval(c));
      p = values(s.pi.eval(c));
      sg = values(s.sigma.eval(c));
    } catch (const DomainError&) {
      continue;
    }
    Eigen::MatrixXd ea(m, m), ep(m, m), es(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        ea(i, j) = a(i, j);
        ep(i, j) = p(i, j);
        es(i, j) = sg(i, j);
      }
    if (std::abs(ep.determinant()) <= det_tol) fail(rep.nondegenerate_pi, pt, "det pi vanishes");

    const double sq = ((ea * ea) + Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff();
    if (sq <= det_tol) fail(rep.no_real_eigenvalue, pt, "A^2 = -Id");
    Eigen::EigenSolver<Eigen::MatrixXd> es_a(ea, false);
    if (es_a.info() != Eigen::Success) {
      fail(rep.no_real_eigenvalue, pt, "eigenvalue computation failed");
    } else {
      double min_imag = INFINITY;
      for (int i = 0; i < m; ++i) min_imag = std::min(min_imag, std::abs(es_a.eigenvalues()(i).imag()));
      if (min_imag == 0.0) fail(rep.no_real_eigenvalue, pt, "A has a real eigenvalue");
      else if (min_imag <= kImagThreshold) rep.no_real_eigenvalue.inconclusive = true;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(ep);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) > kRankThreshold) ++rank;
    if (rank <= 2) fail(rep.rank_and_sigma, pt, "rank pi <= 2");
    else if (std::abs(es.determinant()) <= det_tol) fail(rep.rank_and_sigma, pt, "det sigma vanishes");
  }
  return rep;
}

}  // namespace ggv
