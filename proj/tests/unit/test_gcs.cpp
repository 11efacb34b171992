#include "doctest.h"
#include "support.hpp"

#include <cmath>

#include "ggv/gcs.hpp"
#include "ggv/harness/fixtures.hpp"

using namespace ggv;
using namespace ggv::test;

namespace {

const char* const kConditions[] = {"poisson", "concomitant", "nijenhuis_A", "associated_form"};

Structure fixture(const char* name) { return make_fixture(name).structure; }

Expression log_norm2() { return apply(Function::ln, Expression::norm2()); }

GcsData classical_j(int dim) {
  GcsData d{Endomorphism(dim), Bivector(dim), TwoForm(dim), Chart(dim, -1.0, 1.0)};
  for (int h = 0; h + 1 < dim; h += 2) {
    d.a.set(h + 1, h, c(1.0));
    d.a.set(h, h + 1, c(-1.0));
  }
  return d;
}

LeeForm minus_d(const Expression& tau, int dim) {
  const OneForm d = differential(tau, dim);
  LeeForm w(dim);
  for (int i = 0; i < dim; ++i) w[i] = -d[i];
  return w;
}

}  // namespace

TEST_CASE("algebraic constraints") {
  const CheckReport ex = check_algebraic(*fixture("ex31").gcs);
  CHECK(ex.pass);
  CHECK(ex.max_residual() <= 1e-10);

  const GcsData zero{Endomorphism(2), Bivector(2), TwoForm(2), Chart(2, -1.0, 1.0)};
  const CheckReport z = check_algebraic(zero);
  CHECK_FALSE(z.pass);
  CHECK(z.residual("alg_square") == 1.0);

  const CheckReport j = check_algebraic(classical_j(4));
  CHECK(j.pass);
  CHECK(j.max_residual() == 0.0);
}

TEST_CASE("integrability conditions") {
  const CheckReport ex = check_integrability(*fixture("ex31").gcs);
  CHECK(ex.pass);
  for (const char* id : kConditions) CHECK(ex.residual(id) <= 1e-9);

  const CheckReport j = check_integrability(classical_j(4));
  // Exact on coordinate arguments; the polynomial guard arguments leave round-off only.
  for (const char* id : kConditions) CHECK(j.residual(id) <= 1e-14);

  const CheckReport prime = check_integrability(*fixture("ex31_prime").gcs);
  CHECK_FALSE(prime.pass);
  CHECK(prime.residual("poisson") > 1e-3);
}

TEST_CASE("conformal integrability") {
  const Structure s = fixture("ex31_prime");
  const CheckReport r = check_conformal_integrability(*s.gcs, *s.lee);
  CHECK(r.pass);
  CHECK(r.max_residual() <= 1e-8);

  const Structure w = fixture("ex31_prime_wrong_sign");
  const CheckReport bad = check_conformal_integrability(*w.gcs, *w.lee);
  CHECK_FALSE(bad.pass);
  CHECK(bad.residual("poisson_conf") > 1e-3);

  // Zero Lee form reproduces the plain conditions.
  const GcsData ex = *fixture("ex31").gcs;
  const CheckReport plain = check_integrability(ex);
  const CheckReport conf = check_conformal_integrability(ex, LeeForm(4));
  for (const char* id : kConditions) CHECK(conf.residual(std::string(id) + "_conf") == plain.residual(id));
  const GcsData np = *fixture("ex31_prime").gcs;
  const CheckReport plain_np = check_integrability(np);
  const CheckReport conf_np = check_conformal_integrability(np, LeeForm(4));
  for (const char* id : kConditions)
    CHECK(conf_np.residual(std::string(id) + "_conf") == doctest::Approx(plain_np.residual(id)).epsilon(1e-12));
}

TEST_CASE("ptiii cross-check") {
  const Structure s = fixture("ex31_prime");
  // d tau = lee for tau = -ln|x|^2.
  const CheckReport r = check_ptiii_crosscheck(*s.gcs, -log_norm2());
  CHECK(r.pass);
  CHECK(r.residual("nijenhuis_A_dtau") <= 1e-8);
  const CheckReport conf = check_conformal_integrability(*s.gcs, *s.lee);
  CHECK(std::abs(r.residual("nijenhuis_A_dtau") - conf.residual("nijenhuis_A_conf")) <= 1e-8);

  const GcsData ex = *fixture("ex31").gcs;
  CHECK(check_ptiii_crosscheck(ex, c(3.0)).residual("nijenhuis_A_dtau") ==
        check_integrability(ex).residual("nijenhuis_A"));

  GcsData nos = *fixture("neg_nonintegrable").gcs;
  const CheckReport n1 = check_ptiii_crosscheck(nos, parse("x1*x2", 4));
  const CheckReport n2 = check_integrability(nos);
  CHECK(n1.residual("nijenhuis_A_dtau") == doctest::Approx(n2.residual("nijenhuis_A")));
  CHECK(n1.residual("nijenhuis_A_dtau") > 1e-3);
}

TEST_CASE("conformal transformation law") {
  const GcsData ex = *fixture("ex31").gcs;
  const GcsData same = transform_conformal(ex, c(0.0));
  const Point p{0.4, -0.5, 0.8, 0.3};
  CHECK(max_diff(same.pi.values(p), ex.pi.values(p)) == 0.0);
  CHECK(max_diff(same.sigma.values(p), ex.sigma.values(p)) == 0.0);

  const GcsData two = transform_conformal(ex, c(std::log(2.0)));
  CHECK(max_diff(two.pi.values(p), 2.0 * ex.pi.values(p)) <= 1e-15);
  CHECK(max_diff(two.sigma.values(p), 0.5 * ex.sigma.values(p)) <= 1e-15);
  CHECK(max_diff(two.a.values(p), ex.a.values(p)) == 0.0);

  const GcsData prime = transform_conformal(ex, log_norm2());
  const double n2 = 0.16 + 0.25 + 0.64 + 0.09;
  CHECK(max_diff(prime.pi.values(p), n2 * ex.pi.values(p)) <= 1e-15);
  CHECK(max_diff(prime.sigma.values(p), (1.0 / n2) * ex.sigma.values(p)) <= 1e-15);

  const Expression tau = parse("sin(x1) + x2*x3", 4);
  const GcsData back = transform_conformal(transform_conformal(ex, tau), -tau);
  for (const Point& q : random_points(4, 16, 3)) {
    CHECK(max_diff(back.pi.values(q), ex.pi.values(q)) <= 1e-12);
    CHECK(max_diff(back.sigma.values(q), ex.sigma.values(q)) <= 1e-12);
  }
}

TEST_CASE("integrable structures transform into conformally integrable ones") {
  const GcsData ex = *fixture("ex31").gcs;
  for (const char* t : {"sin(x1) + x2*x3", "ln(norm2)", "x4^2 - x1"}) {
    const Expression tau = parse(t, 4);
    const CheckReport r = check_conformal_integrability(transform_conformal(ex, tau), minus_d(tau, 4));
    CHECK_MESSAGE(r.pass, t);
    CHECK(r.max_residual() <= 1e-8);
  }
}

TEST_CASE("lee form closedness") {
  const Structure s = fixture("ex31_prime");
  CHECK(check_lee_closed(*s.lee, s.chart).residual("lee_closed") <= 1e-10);
  LeeForm w(2);
  w[0] = x(2);
  CHECK(check_lee_closed(w, Chart(2, -1.0, 1.0)).residual("lee_closed") == doctest::Approx(1.0));
  CHECK(check_lee_closed(differential(parse("x1*sin(x2) + norm2", 3), 3), Chart(3, -1.0, 1.0))
            .residual("lee_closed") <= 1e-10);
}

TEST_CASE("rigidity hypotheses") {
  const RigidityReport ex = check_rigidity_hypotheses(*fixture("ex31").gcs);
  CHECK(ex.nondegenerate_pi.holds);
  CHECK(ex.any());

  GcsData nopi = *fixture("ex31").gcs;
  nopi.pi = Bivector(4);
  const RigidityReport np = check_rigidity_hypotheses(nopi);
  CHECK_FALSE(np.nondegenerate_pi.holds);
  CHECK(np.nondegenerate_pi.witness.has_value());

  const RigidityReport j = check_rigidity_hypotheses(classical_j(4));
  CHECK_FALSE(j.no_real_eigenvalue.holds);
  CHECK_FALSE(j.nondegenerate_pi.holds);
}

TEST_CASE("integrability agrees with the generalized torsion on every fixture") {
  for (const std::string& name : fixture_names()) {
    const Structure s = make_fixture(name).structure;
    if (!s.gcs) continue;
    CheckOptions o;
    o.points = 16;
    const CheckReport r = check_integrability(*s.gcs, o);
    bool four = true;
    for (const char* id : kConditions) four = four && r.residual(id) <= o.tol;
    CHECK_MESSAGE(four == (r.residual("nijenhuis_phi") <= o.tol), name);
  }
}
