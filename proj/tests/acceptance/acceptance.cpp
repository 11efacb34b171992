// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any fails.
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

#include "ggv/bigtangent.hpp"
#include "ggv/gcs.hpp"
#include "ggv/ghermitian.hpp"
#include "ggv/harness/fixtures.hpp"
#include "ggv/harness/sampling.hpp"
#include "ggv/harness/suite.hpp"
#include "ggv/hypersurface.hpp"

using namespace ggv;
using namespace ggv::test;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

Structure fixture(const char* name) { return make_fixture(name).structure; }
Expression log_norm2() { return apply(Function::ln, Expression::norm2()); }

constexpr GkCriterion kGk[] = {GkCriterion::gualtieri, GkCriterion::crf, GkCriterion::bismut};
constexpr ConfGkCriterion kConf[] = {ConfGkCriterion::conformal_form, ConfGkCriterion::weyl,
                                     ConfGkCriterion::weyl_bismut};

Outcome criterion1() {
  Outcome o;
  const Structure ex = fixture("ex31");
  const LeeForm lee = *fixture("ex31_prime").lee;
  const CheckReport alg = check_algebraic(*ex.gcs);
  const CheckReport integ = check_integrability(*ex.gcs);
  const GcsData prime = transform_conformal(*ex.gcs, log_norm2());
  const CheckReport pint = check_integrability(prime);
  const CheckReport conf = check_conformal_integrability(prime, lee);
  o.detail << "algebraic " << alg.max_residual() << ", integrability " << integ.max_residual()
           << ", transformed integrability " << pint.max_residual() << ", conformal " << conf.max_residual();
  o.require(alg.pass && alg.max_residual() <= 1e-8, "algebraic");
  o.require(integ.pass && integ.max_residual() <= 1e-8, "integrability");
  o.require(pint.max_residual() >= 1e-3, "transformed structure must fail integrability");
  o.require(conf.pass && conf.max_residual() <= 1e-8, "conformal integrability");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const GHermitian flat = fixture("ex32").hermitian();
  const Structure rs = fixture("ex32_rescaled");
  double gk_max = 0.0, resc_min = 1e300, conf_max = 0.0;
  for (GkCriterion c : kGk) {
    const CheckReport r = check_gk(flat, c);
    gk_max = std::max(gk_max, r.max_residual());
    o.require(r.pass && r.max_residual() <= 1e-8, std::string("gk ") + criterion_name(c));
    const CheckReport f = check_gk(rs.hermitian(), c);
    resc_min = std::min(resc_min, f.max_residual());
    o.require(!f.pass, std::string("rescaled gk must fail ") + criterion_name(c));
  }
  for (ConfGkCriterion c : kConf) {
    const CheckReport r = check_conf_gk(rs.hermitian(), *rs.lee, c);
    conf_max = std::max(conf_max, r.max_residual());
    o.require(r.pass && r.max_residual() <= 1e-8, std::string("conf-gk ") + criterion_name(c));
  }
  o.detail << "gk " << gk_max << ", rescaled gk (smallest max) " << resc_min << ", rescaled conf-gk " << conf_max;
  return o;
}

Outcome criterion3() {
  Outcome o;
  int compared = 0;
  for (const std::string& name : fixture_names()) {
    const Structure s = make_fixture(name).structure;
    if (s.has_hermitian()) {
      int passes = 0;
      for (GkCriterion c : kGk) passes += check_gk(s.hermitian(), c).pass ? 1 : 0;
      o.require(passes == 0 || passes == 3, name + " gk criteria disagree");
      ++compared;
      if (s.lee) {
        int cp = 0;
        for (ConfGkCriterion c : kConf) cp += check_conf_gk(s.hermitian(), *s.lee, c).pass ? 1 : 0;
        o.require(cp == 0 || cp == 3, name + " conf-gk criteria disagree");
        ++compared;
      }
    }
  }
  o.detail << compared << " criterion triples compared";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto pts = random_points(4, 64, 404, 0.3, 1.3);
  double schouten = 0.0, musical = 0.0, courant = 0.0, conformal = 0.0, weyl = 0.0, bismut = 0.0;

  RandomExpressions gen(4, 405);
  Bivector pi(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) pi.set(i, j, gen.next(2));
  const Expression f = parse("1 + x1^2 + 0.5*sin(x2*x3)", 4);
  const Bivector fpi = scale(f, pi);

  const GcsData hitchin = *fixture("ex31").gcs;
  RealMatrix w(4, 4, 0.0);
  w(0, 2) = w(1, 3) = 1.0;
  w(2, 0) = w(3, 1) = -1.0;

  std::vector<BigSection> sections;
  {
    const auto xs = random_vector_fields(4, 4, 406);
    const auto as = random_one_forms(4, 4, 407);
    for (int k = 0; k < 4; ++k) sections.emplace_back(xs[static_cast<std::size_t>(k)], as[static_cast<std::size_t>(k)]);
  }
  const GHermitian torsion = fixture("hopf_gk_torsion").hermitian();
  const LeeForm lee = *fixture("ex32_rescaled").lee;

  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Point& p = pts[k];
    const auto xs = lift_point(p);
    const Jet fj = f.eval_jet(p);
    const RealMatrix pv = pi.values(p);
    const Vector df(fj.grad().begin(), fj.grad().end());
    schouten = std::max(schouten, max_abs(schouten_square(fpi, p) - (fj.value() * fj.value()) * schouten_square(pi, p) -
                                          (2.0 * fj.value()) * wedge(sharp_pi(pv, df), pv)));

    const RealMatrix hp = hitchin.pi.values(p);
    for (int i = 0; i < 4; ++i) {
      Vector e(4, 0.0);
      e[static_cast<std::size_t>(i)] = 1.0;
      const Vector r = sharp_pi(hp, flat_sigma(w, e));
      for (int j = 0; j < 4; ++j) musical = std::max(musical, std::abs(r[static_cast<std::size_t>(j)] + (i == j ? 1.0 : 0.0)));
    }

    for (const auto& a : sections)
      for (const auto& b : sections)
        courant = std::max(courant, max_abs(courant_bracket(a, b, p) + courant_bracket(b, a, p)));

    const Vector s1 = values(sections[k % 4].eval(xs)), s2 = values(sections[(k + 1) % 4].eval(xs));
    const double tau = p[0] - p[1];
    const double rhs = std::exp(tau) * neutral_pairing(s1, s2);
    conformal = std::max(conformal, std::abs(neutral_pairing(conformal_change(s1, tau), conformal_change(s2, tau)) - rhs) /
                                        (1.0 + std::abs(rhs)));

    const JetMatrix g = torsion.metric.gamma.eval(xs), psi = torsion.metric.psi.eval(xs);
    const Vector wv = values(lee.eval(xs));
    const RealMatrix gv = values(g);
    const Christoffel wc = connection_coeffs(ConnectionKind::weyl, g, psi, wv);
    const Form3 nw = cov_deriv_metric(wc, g);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c2 = 0; c2 < 4; ++c2) {
          weyl = std::max(weyl, std::abs(wc(a, b, c2) - wc(a, c2, b)));
          weyl = std::max(weyl, std::abs(nw(a, b, c2) - wv[static_cast<std::size_t>(a)] * gv(b, c2)));
        }
    for (ConnectionKind kind : {ConnectionKind::bismut_plus, ConnectionKind::bismut_minus})
      bismut = std::max(bismut, max_abs(cov_deriv_metric(connection_coeffs(kind, g, psi, wv), g)));
  }
  o.detail << "schouten " << schouten << ", musical " << musical << ", courant " << courant << ", conformal "
           << conformal << ", weyl " << weyl << ", bismut " << bismut;
  o.require(schouten <= 1e-9, "schouten rescaling");
  o.require(musical <= 1e-12, "sharp_pi flat_omega");
  o.require(courant <= 1e-12, "courant antisymmetry");
  o.require(conformal <= 1e-10, "conformal change of g");
  o.require(weyl <= 1e-9, "weyl connection");
  o.require(bismut <= 1e-9, "bismut metricity");
  return o;
}

Outcome criterion5() {
  Outcome o;
  RandomExpressions gen(4, 505);
  const auto pts = random_points(4, 100, 506);
  double worst = 0.0;
  for (const Point& p : pts) worst = std::max(worst, gradient_fd_error(gen.next(), p));
  o.detail << "100 pairs, worst relative error " << worst;
  o.require(worst <= 1e-6, "finite differences");
  return o;
}

Outcome criterion6() {
  Outcome o;
  const Expression varying = parse("0.5*x1 + 0.3*x2*x3", 4);
  const Expression constant = Expression::constant(0.7);
  int tested = 0;
  for (const std::string& name : fixture_names()) {
    const Structure s = make_fixture(name).structure;
    if (!s.gcs || s.dim() != 4 || !check_rigidity_hypotheses(*s.gcs).any()) continue;
    if (!check_integrability(*s.gcs).pass) continue;
    ++tested;
    std::vector<Expression> taus{varying};
    if (s.chart.exclusion) taus.push_back(log_norm2());
    for (const Expression& tau : taus) {
      const CheckReport r = check_integrability(transform_conformal(*s.gcs, tau));
      o.require(r.max_residual() >= 1e-3, name + " non-constant change stays integrable");
      if (s.has_hermitian() && check_gk(s.hermitian(), GkCriterion::gualtieri).pass) {
        const CheckReport g = check_gk(transform_conformal(s.hermitian(), tau), GkCriterion::gualtieri);
        o.require(g.max_residual() >= 1e-3, name + " non-constant change stays generalized Kaehler");
      }
    }
    const CheckReport k = check_integrability(transform_conformal(*s.gcs, constant));
    o.require(k.max_residual() <= 1e-8, name + " constant change breaks integrability");
    if (s.has_hermitian() && check_gk(s.hermitian(), GkCriterion::gualtieri).pass)
      for (GkCriterion c : kGk)
        o.require(check_gk(transform_conformal(s.hermitian(), constant), c).max_residual() <= 1e-8,
                  name + " constant change breaks generalized Kaehler");
  }
  o.detail << tested << " integrable fixtures satisfy a rigidity hypothesis";
  o.require(tested > 0, "no fixture tested");
  return o;
}

Outcome criterion7() {
  Outcome o;
  const Structure rs = fixture("ex32_rescaled");
  const CheckReport lee = check_lee_hypersurface(*rs.hyp, *rs.lee);
  const CheckReport l1 = check_lee1(*rs.hyp, rs.hermitian(), *rs.lee);
  const Structure fk = fixture("flat_kahler");
  const CheckReport cf = check_closed_fundamental(*fk.hyp, fk.metric->gamma, fk.gcs->a);
  const CheckReport crf = check_crf(*fk.hyp, fk.metric->gamma, fk.gcs->a);
  o.detail << "lee tangent " << lee.residual("lee_tangent") << ", lee1 " << l1.residual("lee1_plus") << "/"
           << l1.residual("lee1_minus") << ", d Xi " << cf.residual("closed_fundamental") << ", condsupl "
           << crf.residual("condsupl1") << "/" << crf.residual("condsupl2");
  o.require(lee.residual("lee_tangent") <= 1e-10, "lee hypersurface");
  o.require(l1.residual("lee1_plus") <= 1e-8 && l1.residual("lee1_minus") <= 1e-8, "lee1");
  o.require(cf.residual("closed_fundamental") <= 1e-9, "closed fundamental form");
  o.require(crf.residual("condsupl1") <= 1e-8 && crf.residual("condsupl2") <= 1e-8, "crf");
  return o;
}

std::string run_cli(const std::string& args, int& status) {
  const std::string cmd = std::string(GGV_CLI) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  if (!pipe) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  status = pclose(pipe);
  return out;
}

Outcome criterion8() {
  Outcome o;
  const std::string base = "check --fixture ex32_rescaled --suite conf-gk --report jsonl";
  int s1 = 0, s2 = 0, s3 = 0;
  const std::string a = run_cli(base, s1);
  const std::string b = run_cli(base, s2);
  const std::string c = run_cli(base + " --workers 6", s3);
  o.detail << a.size() << " bytes per run";
  o.require(s1 == 0 && s2 == 0 && s3 == 0, "cli exit status");
  o.require(!a.empty(), "empty output");
  o.require(a == b, "two runs differ");
  o.require(a == c, "worker count changes output");
  return o;
}

}  // namespace

int main() {
  Outcome (*const criteria[])() = {criterion1, criterion2, criterion3, criterion4,
                                   criterion5, criterion6, criterion7, criterion8};
  int failed = 0;
  for (int i = 0; i < 8; ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    std::printf("criterion %d: %s %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.str().c_str());
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
