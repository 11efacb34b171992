#include "ggv/harness/fixtures.hpp"

#include <functional>

#include "ggv/error.hpp"

namespace ggv {

namespace {

Expression c(double v) { return Expression::constant(v); }
Expression x(int i) { return Expression::coordinate(i); }

Chart annulus(int dim) {
  Chart ch(dim, -2.0, 2.0);
  ch.exclusion = parse("(norm2 - 0.25)*(4 - norm2)", dim);
  return ch;
}

/// -2 x_i / |x|^2, i.e. -2 d ln|x|.
LeeForm radial_lee(int dim, double factor = -2.0) {
  LeeForm w(dim);
  for (int i = 0; i < dim; ++i) w[i] = c(factor) * x(i + 1) / Expression::norm2();
  return w;
}

Expression log_norm2() { return apply(Function::ln, Expression::norm2()); }

/// Unit sphere in R^4 through (cos u1 cos u2, cos u1 sin u2, sin u1 cos u3, sin u1 sin u3),
/// kept away from the degenerate circles u1 = 0 and u1 = pi/2.
Hypersurface unit_sphere3() {
  Chart pc(3, -3.0, 3.0);
  pc.box[0] = {0.2, 1.37};
  const Expression u1 = x(1), u2 = x(2), u3 = x(3);
  const auto cs = [](const Expression& e) { return apply(Function::cos, e); };
  const auto sn = [](const Expression& e) { return apply(Function::sin, e); };
  return Hypersurface({cs(u1) * cs(u2), cs(u1) * sn(u2), sn(u1) * cs(u3), sn(u1) * sn(u3)}, pc);
}

SymmetricTwoTensor identity_metric(int dim, const Expression& diag = Expression::constant(1.0)) {
  SymmetricTwoTensor g(dim);
  for (int i = 0; i < dim; ++i) g.set(i, i, diag);
  return g;
}

/// J+ d_h = d_{n+h}.
Endomorphism j_split(int dim) {
  const int n = dim / 2;
  Endomorphism j(dim);
  for (int h = 0; h < n; ++h) {
    j.set(n + h, h, c(1.0));
    j.set(h, n + h, c(-1.0));
  }
  return j;
}

/// J- d_{2h-1} = d_{2h}.
Endomorphism j_paired(int dim) {
  Endomorphism j(dim);
  for (int h = 0; h + 1 < dim; h += 2) {
    j.set(h + 1, h, c(1.0));
    j.set(h, h + 1, c(-1.0));
  }
  return j;
}

TwoForm psi0(int dim) {
  TwoForm p(dim);
  p.set(0, 1, c(0.3));
  p.set(0, dim - 1, c(-0.5));
  p.set(2, 3, c(0.7));
  if (dim >= 6) p.set(4, 5, c(0.2));
  return p;
}

Structure from_hermitian(const GHermitian& h) {
  Structure s;
  s.chart = h.chart();
  s.gcs = h.s;
  s.metric = h.metric;
  return s;
}

/// Hitchin pair (omega = sum dx^h ^ dx^{n+h}, A) on R^4: pi with #_pi flat_omega = -Id and sigma = omega(A^2 + Id).
GcsData hitchin_example(const Chart& chart) {
  const double b[2][2] = {{0.5, 1.0}, {-0.3, 0.2}};
  const double s1[2][2] = {{0.0, 0.7}, {-0.7, 0.0}};
  const double s2[2][2] = {{0.0, -0.4}, {0.4, 0.0}};
  RealMatrix a(4, 4, 0.0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      a(i, j) = b[i][j];
      a(i, j + 2) = s1[i][j];
      a(i + 2, j) = s2[i][j];
      a(i + 2, j + 2) = b[j][i];
    }
  RealMatrix w(4, 4, 0.0);
  w(0, 2) = w(1, 3) = 1.0;
  w(2, 0) = w(3, 1) = -1.0;
  const RealMatrix sigma = (a * a + RealMatrix::identity(4)).transposed() * w;
  GcsData d{Endomorphism(4), Bivector(4), TwoForm(4), chart};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (a(i, j) != 0.0) d.a.set(i, j, c(a(i, j)));
      if (i < j && w(i, j) != 0.0) d.pi.set(i, j, c(w(i, j)));
      if (i < j && sigma(i, j) != 0.0) d.sigma.set(i, j, c(sigma(i, j)));
    }
  return d;
}

Structure ex31() {
  Structure s;
  s.chart = annulus(4);
  s.gcs = hitchin_example(s.chart);
  return s;
}

Structure ex31_prime(double lee_factor) {
  Structure s = ex31();
  s.gcs = transform_conformal(*s.gcs, log_norm2());
  s.lee = radial_lee(4, lee_factor);
  return s;
}

Quadruple ex32_quadruple(int dim) {
  return {identity_metric(dim), psi0(dim), j_split(dim), j_paired(dim)};
}

Structure ex32() { return from_hermitian(from_quadruple(ex32_quadruple(4), Chart(4, -2.0, 2.0))); }

Structure ex32_rescaled(int dim) {
  const Chart ch = annulus(dim);
  Structure s = from_hermitian(transform_conformal(from_quadruple(ex32_quadruple(dim), ch), log_norm2()));
  s.lee = radial_lee(dim);
  if (dim == 4) s.hyp = unit_sphere3();
  return s;
}

/// Classical Hermitian (gamma, J) as the generalized structure (J, 0, 0) with psi = 0.
Structure classical(const Chart& chart, const Endomorphism& j, const SymmetricTwoTensor& gamma) {
  Structure s;
  s.chart = chart;
  s.gcs = GcsData{j, Bivector(chart.dim), TwoForm(chart.dim), chart};
  s.metric = GMetric{gamma, TwoForm(chart.dim)};
  return s;
}

Structure flat_kahler() {
  Structure s = classical(Chart(4, -2.0, 2.0), j_split(4), identity_metric(4));
  s.lee = LeeForm(4);
  s.hyp = unit_sphere3();
  return s;
}

Structure hopf_lck() {
  Structure s = classical(annulus(4), j_split(4), identity_metric(4, c(1.0) / Expression::norm2()));
  s.lee = radial_lee(4);
  return s;
}

/// gamma = Id/|x|^2 with the constant J+- and psi = a ^ b / (|x|^2 (x1^2 + x2^2)),
/// a = x1 dx2 - x2 dx1, b = x3 dx4 - x4 dx3: generalized Kaehler with d psi != 0.
Structure hopf_gk_torsion() {
  Chart ch = annulus(4);
  ch.exclusion = parse("(norm2 - 0.25)*(4 - norm2)*(x1^2 + x2^2 - 0.1)", 4);
  Quadruple q = ex32_quadruple(4);
  q.gamma = identity_metric(4, c(1.0) / Expression::norm2());
  const Expression den = Expression::norm2() * (pow(x(1), 2) + pow(x(2), 2));
  const Expression a[2] = {-x(2), x(1)};
  const Expression b[2] = {-x(4), x(3)};
  q.psi = TwoForm(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) q.psi.set(i, 2 + j, a[i] * b[j] / den);
  return from_hermitian(from_quadruple(q, ch));
}

/// R^3 with gamma_N = dx^2 + dy^2 + (dz - y dx)^2, Z = d_z, xi = dz - y dx, F = -phi; times R_t.
Structure sasakian_product() {
  const Chart cn(3, -1.0, 1.0);
  SymmetricTwoTensor g(3);
  g.set(0, 0, c(1.0) + pow(x(2), 2));
  g.set(1, 1, c(1.0));
  g.set(2, 2, c(1.0));
  g.set(0, 2, -x(2));
  const auto contact = [](double sign) {
    AlmostContact ac{Endomorphism(3), VectorField(3), OneForm(3)};
    ac.f.set(0, 1, c(-sign));
    ac.f.set(1, 0, c(sign));
    ac.f.set(2, 1, c(-sign) * x(2));
    ac.z[2] = c(sign);
    ac.xi[0] = c(-sign) * x(2);
    ac.xi[2] = c(sign);
    return ac;
  };
  const Quadruple q = sasakian_product_quadruple(contact(1.0), contact(-1.0), g, TwoForm(3), OneForm(3), cn);
  Structure s = from_hermitian(from_quadruple(q, product_chart(cn, -1.0, 1.0)));
  s.lee = LeeForm(4);
  (*s.lee)[3] = c(-1.0);
  return s;
}

Structure neg_zero() {
  Structure s;
  s.chart = Chart(2, -1.0, 1.0);
  s.gcs = GcsData{Endomorphism(2), Bivector(2), TwoForm(2), s.chart};
  return s;
}

/// R J+ R^t with R the rotation by angle x3 in the (x1, x2) plane: orthogonal, J^2 = -Id, not integrable.
Structure neg_nonintegrable() {
  const Expression co = apply(Function::cos, x(3));
  const Expression si = apply(Function::sin, x(3));
  const Expression r[4][4] = {{co, -si, c(0), c(0)}, {si, co, c(0), c(0)}, {c(0), c(0), c(1), c(0)},
                              {c(0), c(0), c(0), c(1)}};
  const Endomorphism j0 = j_split(4);
  Endomorphism j(4);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      Expression e = c(0.0);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          const Expression m = j0.at(a, b);
          if (m.is_zero() || r[i][a].is_zero() || r[k][b].is_zero()) continue;
          e = e.is_zero() ? m * r[i][a] * r[k][b] : e + m * r[i][a] * r[k][b];
        }
      j.set(i, k, e);
    }
  return classical(Chart(4, -1.5, 1.5), j, identity_metric(4));
}

struct Entry {
  const char* name;
  const char* description;
  std::function<Structure()> build;
  std::map<std::string, bool> expected;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"ex31", "Hitchin pair with constant A on the annulus of R^4", ex31,
       {{"algebraic", true}, {"integrability", true}}},
      {"ex31_prime", "ex31 rescaled by |x|^2 with Lee form -2 d ln|x|", [] { return ex31_prime(-2.0); },
       {{"algebraic", true}, {"integrability", false}, {"conf-integrability", true}}},
      {"ex31_prime_wrong_sign", "ex31 rescaled by |x|^2 with the opposite Lee form", [] { return ex31_prime(2.0); },
       {{"algebraic", true}, {"integrability", false}, {"conf-integrability", false}}},
      {"ex32", "constant generalized Kaehler data (Id, psi0, J+, J-) on R^4", ex32,
       {{"algebraic", true}, {"integrability", true}, {"gk", true}}},
      {"ex32_rescaled", "ex32 divided by |x|^2 on the annulus, with the unit sphere",
       [] { return ex32_rescaled(4); },
       {{"algebraic", true},
        {"integrability", false},
        {"conf-integrability", true},
        {"gk", false},
        {"conf-gk", true},
        {"hypersurface", true}}},
      {"ex32_6d", "six-dimensional ex32 divided by |x|^2", [] { return ex32_rescaled(6); },
       {{"algebraic", true},
        {"integrability", false},
        {"conf-integrability", true},
        {"gk", false},
        {"conf-gk", true}}},
      {"flat_kahler", "flat Kaehler R^4 with the unit sphere", flat_kahler,
       {{"algebraic", true},
        {"integrability", true},
        {"conf-integrability", true},
        {"gk", true},
        {"conf-gk", true},
        {"hypersurface", true}}},
      {"hopf_lck", "classical locally conformal Kaehler metric Id/|x|^2", hopf_lck,
       {{"algebraic", true}, {"integrability", true}, {"conf-integrability", true}, {"gk", false}, {"conf-gk", true}}},
      {"hopf_gk_torsion", "generalized Kaehler with torsion on the punctured annulus", hopf_gk_torsion,
       {{"algebraic", true}, {"integrability", true}, {"gk", true}}},
      {"sasakian_product", "Sasakian R^3 times R with Lee form -dt", sasakian_product,
       {{"algebraic", true},
        {"integrability", false},
        {"conf-integrability", true},
        {"gk", false},
        {"conf-gk", true}}},
      {"neg_zero", "A = pi = sigma = 0 in dimension 2", neg_zero,
       {{"algebraic", false}, {"integrability", true}}},
      {"neg_nonintegrable", "orthogonal almost complex structure with nonzero Nijenhuis tensor", neg_nonintegrable,
       {{"algebraic", true}, {"integrability", false}, {"gk", false}}},
  };
  return entries;
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const Entry& e : registry()) out.emplace_back(e.name);
  return out;
}

Fixture make_fixture(const std::string& name) {
  for (const Entry& e : registry())
    if (name == e.name) return {e.name, e.description, e.build(), e.expected};
  throw UsageError("unknown fixture '" + name + "'");
}

}  // namespace ggv
