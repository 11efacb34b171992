#include "ggv/bigtangent.hpp"

#include <cmath>
#include <random>

#include "ggv/geometry.hpp"

namespace ggv {

namespace {

constexpr std::uint64_t kBatterySeed = 0xB16BA77E;

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

int half(std::size_t n) {
  if (n % 2 != 0) throw DimensionMismatch("big section has odd length");
  return static_cast<int>(n / 2);
}

Expression random_polynomial(int dim, std::mt19937_64& gen) {
  // Explicit bit mapping instead of a std distribution keeps this platform independent.
  const auto coef = [](std::mt19937_64& g) { return -1.0 + 2.0 * static_cast<double>(g() >> 11) * 0x1.0p-53; };
  Expression e = Expression::constant(coef(gen));
  for (int i = 1; i <= dim; ++i) e = e + Expression::constant(coef(gen)) * Expression::coordinate(i);
  for (int i = 1; i <= dim; ++i)
    for (int j = i; j <= dim; ++j)
      e = e + Expression::constant(0.5 * coef(gen)) * Expression::coordinate(i) * Expression::coordinate(j);
  return e;
}

}  // namespace

BigSection::BigSection(VectorField x_, OneForm alpha_) : x(std::move(x_)), alpha(std::move(alpha_)) {
  if (x.dim() != alpha.dim()) throw DimensionMismatch("big section parts differ in dimension");
}

BigSection BigSection::basis(int i, int dim) {
  if (i < dim) return {VectorField::basis(i, dim), OneForm(dim)};
  return {VectorField(dim), OneForm::basis(i - dim, dim)};
}

JetVector BigSection::eval(std::span<const Jet> coords) const {
  JetVector v = x.eval(coords);
  const JetVector a = alpha.eval(coords);
  v.insert(v.end(), a.begin(), a.end());
  return v;
}

double neutral_pairing(std::span<const double> s1, std::span<const double> s2) {
  const int m = half(s1.size());
  if (s2.size() != s1.size()) throw DimensionMismatch("big sections differ in dimension");
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += s1[sz(m + i)] * s2[sz(i)] + s2[sz(m + i)] * s1[sz(i)];
  return 0.5 * s;
}

Vector courant_bracket(std::span<const Jet> s1, std::span<const Jet> s2) {
  const int m = half(s1.size());
  if (s2.size() != s1.size()) throw DimensionMismatch("big sections differ in dimension");
  const auto x = s1.subspan(0, sz(m));
  const auto a = s1.subspan(sz(m));
  const auto y = s2.subspan(0, sz(m));
  const auto b = s2.subspan(sz(m));
  Jet skew(0.0);
  for (int i = 0; i < m; ++i) skew += a[sz(i)] * y[sz(i)] - b[sz(i)] * x[sz(i)];
  Vector r = lie_bracket(x, y);
  const Vector form = lie_derivative(x, b) - lie_derivative(y, a);
  r.resize(sz(2 * m));
  for (int i = 0; i < m; ++i) r[sz(m + i)] = form[sz(i)] + 0.5 * skew.d(i);
  return r;
}

Vector courant_bracket(const BigSection& s1, const BigSection& s2, const Point& p) {
  const auto c = lift_point(p);
  return courant_bracket(s1.eval(c), s2.eval(c));
}

Vector conformal_change(std::span<const double> s, double tau) {
  const int m = half(s.size());
  Vector r(s.begin(), s.end());
  const double f = std::exp(tau);
  for (int i = 0; i < m; ++i) r[sz(m + i)] *= f;
  return r;
}

JetMatrix phi_block(const JetMatrix& a, const JetMatrix& p, const JetMatrix& s) {
  const int m = a.rows();
  JetMatrix b(2 * m, 2 * m, Jet(0.0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      b(i, j) = a(i, j);
      b(i, m + j) = p(j, i);
      b(m + i, j) = s(j, i);
      b(m + i, m + j) = -a(j, i);
    }
  return b;
}

JetMatrix phi_block(const PhiMatrix& phi, std::span<const Jet> coords) {
  return phi_block(phi.a.eval(coords), phi.pi.eval(coords), phi.sigma.eval(coords));
}

Vector phi_apply(const PhiMatrix& phi, const BigSection& s, const Point& p) {
  const auto c = lift_point(p);
  return values(phi_block(phi, c) * s.eval(c));
}

Vector nijenhuis_big(const JetMatrix& m, std::span<const Jet> s1, std::span<const Jet> s2) {
  const JetVector m1 = m * s1;
  const JetVector m2 = m * s2;
  const RealMatrix mv = values(m);
  return courant_bracket(m1, m2) - mv * courant_bracket(s1, m2) - mv * courant_bracket(m1, s2) +
         mv * (mv * courant_bracket(s1, s2));
}

Vector nijenhuis_phi(const PhiMatrix& phi, const BigSection& s1, const BigSection& s2, const Point& p) {
  const auto c = lift_point(p);
  return nijenhuis_big(phi_block(phi, c), s1.eval(c), s2.eval(c));
}

std::vector<VectorField> random_vector_fields(int dim, int count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<VectorField> out;
  for (int k = 0; k < count; ++k) {
    VectorField v(dim);
    for (int i = 0; i < dim; ++i) v[i] = random_polynomial(dim, gen);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<OneForm> random_one_forms(int dim, int count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<OneForm> out;
  for (int k = 0; k < count; ++k) {
    OneForm a(dim);
    for (int i = 0; i < dim; ++i) a[i] = random_polynomial(dim, gen);
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<BigSection> section_battery(int dim, int random_count) {
  std::vector<BigSection> out;
  for (int i = 0; i < 2 * dim; ++i) out.push_back(BigSection::basis(i, dim));
  const auto xs = random_vector_fields(dim, random_count, kBatterySeed);
  const auto as = random_one_forms(dim, random_count, kBatterySeed + 1);
  for (int k = 0; k < random_count; ++k) out.emplace_back(xs[sz(k)], as[sz(k)]);
  return out;
}

}  // namespace ggv
