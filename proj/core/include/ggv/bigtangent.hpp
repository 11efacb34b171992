#pragma once

#include <span>
#include <vector>

#include "ggv/linalg.hpp"
#include "ggv/tensor.hpp"

namespace ggv {

/// A section (X, alpha) of TM + T*M. Values are packed as 2m vectors, X first.
struct BigSection {
  VectorField x;
  OneForm alpha;

  BigSection() = default;
  BigSection(VectorField x_, OneForm alpha_);
  /// (d_i, 0) for i < m and (0, dx^{i-m}) for m <= i < 2m.
  static BigSection basis(int i, int dim);

  int dim() const { return x.dim(); }
  JetVector eval(std::span<const Jet> coords) const;
};

/// The triple (A, pi, sigma) representing Phi.
struct PhiMatrix {
  Endomorphism a;
  Bivector pi;
  TwoForm sigma;

  int dim() const { return a.dim(); }
};

/// g((X,a),(Y,b)) = (a(Y) + b(X)) / 2.
double neutral_pairing(std::span<const double> s1, std::span<const double> s2);
/// ([X,Y], L_X b - L_Y a + d(a(Y) - b(X)) / 2).
Vector courant_bracket(std::span<const Jet> s1, std::span<const Jet> s2);
Vector courant_bracket(const BigSection& s1, const BigSection& s2, const Point& p);
/// (X, e^tau a).
Vector conformal_change(std::span<const double> s, double tau);

/// The 2m x 2m block matrix (A, #_pi; flat_sigma, -A^t) from component jets.
JetMatrix phi_block(const JetMatrix& a, const JetMatrix& p, const JetMatrix& s);
JetMatrix phi_block(const PhiMatrix& phi, std::span<const Jet> coords);
/// (AX + #_pi a, flat_sigma X - a o A).
Vector phi_apply(const PhiMatrix& phi, const BigSection& s, const Point& p);

/// N(s1,s2) = [Ms1,Ms2] - M[s1,Ms2] - M[Ms1,s2] + M(M[s1,s2]) for any
/// big-tangent endomorphism M given by its jets; M^2 is applied twice rather
/// than assumed to be -Id.
Vector nijenhuis_big(const JetMatrix& m, std::span<const Jet> s1, std::span<const Jet> s2);
Vector nijenhuis_phi(const PhiMatrix& phi, const BigSection& s1, const BigSection& s2, const Point& p);

/// Coordinate sections (d_i, 0), (0, dx^j) followed by `random_count` seeded
/// random sections with polynomial components of degree <= 2.
std::vector<BigSection> section_battery(int dim, int random_count = 5);

/// Seeded random polynomial fields of degree <= 2 (coefficients in [-1, 1]).
std::vector<VectorField> random_vector_fields(int dim, int count, std::uint64_t seed);
std::vector<OneForm> random_one_forms(int dim, int count, std::uint64_t seed);

}  // namespace ggv
