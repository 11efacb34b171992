#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ggv/gcs.hpp"
#include "ggv/geometry.hpp"
#include "ggv/report.hpp"

namespace ggv {

/// Generalized Riemannian metric given by (gamma, psi).
struct GMetric {
  SymmetricTwoTensor gamma;
  TwoForm psi;
};

/// The classical data (gamma, psi, J+, J-) equivalent to a generalized almost Hermitian pair.
struct Quadruple {
  SymmetricTwoTensor gamma;
  TwoForm psi;
  Endomorphism j_plus;
  Endomorphism j_minus;
};

/// A generalized almost complex structure together with a generalized metric.
struct GHermitian {
  GcsData s;
  GMetric metric;

  int dim() const { return s.dim(); }
  const Chart& chart() const { return s.chart; }
};

/// Builds (A, pi, sigma) from (gamma, psi, J+, J-) by inverting J+- = A + #_pi flat_{psi +- gamma}:
/// pi = -(J+ - J-) gamma^-1 / 2, A = (J+ + J-)/2 - pi psi, sigma = -(E J+ + A^t E) with E = gamma - psi.
/// gamma^-1 is synthesized by the adjugate formula.
GHermitian from_quadruple(const Quadruple& q, const Chart& chart);

/// Components at a point, as jets.
struct HermitianJets {
  JetMatrix a, p, s, gamma, psi;
};
HermitianJets eval_hermitian(const GHermitian& h, std::span<const Jet> coords);

/// The block matrix (phi, #_gamma; flat_beta, phi^t) of #_G, phi = gamma^-1 psi, beta = gamma (Id - phi^2).
template <class T>
Matrix<T> sharp_g_block(const Matrix<T>& gamma, const Matrix<T>& psi);
RealMatrix sharp_g_matrix(const GMetric& m, const Point& p);
/// The matrix of the positive form G(s1, s2) = 2 g(#_G s1, s2).
RealMatrix g_form_matrix(const RealMatrix& sharp_g);
/// The neutral pairing matrix N with g(s1, s2) = s1^t N s2 / 2.
RealMatrix neutral_matrix(int dim);
/// Smallest eigenvalue of the G-form at p.
double min_g_eigenvalue(const GMetric& m, const Point& p);

/// Conditions: sharp_g_square, g_isometry, positivity (0 when the G-form is positive definite, else 1).
CheckReport check_metric_axioms(const GMetric& m, const Chart& chart, const CheckOptions& opts = {});

/// Conditions: commutation (#_G Phi = Phi #_G), g_skew (G(Phi s1, s2) + G(s1, Phi s2) = 0).
CheckReport check_compatibility(const GHermitian& h, const CheckOptions& opts = {});

/// J+- = A + #_pi flat_{psi +- gamma}.
template <class T>
std::pair<Matrix<T>, Matrix<T>> j_pm(const Matrix<T>& a, const Matrix<T>& p, const Matrix<T>& gamma,
                                     const Matrix<T>& psi) {
  const Matrix<T> base = a + p * psi;
  const Matrix<T> pg = p * gamma;
  return {base - pg, base + pg};
}
std::pair<RealMatrix, RealMatrix> extract_j_pm(const GHermitian& h, const Point& p);

GMetric transform_conformal_metric(const GMetric& m, const ScalarField& tau);
/// Conformal change of the whole pair: (A, e^tau pi, e^-tau sigma; e^-tau gamma, e^-tau psi).
GHermitian transform_conformal(const GHermitian& h, const ScalarField& tau);

/// Conditions: j_plus, j_minus (J+- of h against J+- of its conformal transform).
CheckReport conformal_invariance_j(const GHermitian& h, const ScalarField& tau, const CheckOptions& opts = {});

/// Phi^c = #_G Phi.
RealMatrix complementary_structure(const GHermitian& h, const Point& p);
/// max |-Phi Phi^c - #_G| at p.
double complementary_residual(const GHermitian& h, const Point& p);

/// omega(X, Y) = gamma(JX, Y), i.e. omega = J^t gamma.
template <class T>
Matrix<T> kahler_form(const Matrix<T>& gamma, const Matrix<T>& j) {
  return j.transposed() * gamma;
}
/// (d^C omega)(X,Y,Z) = -d omega(JX, JY, JZ), from the jets of omega and the value of J.
Form3 dc_omega(const Form3& d_omega, const RealMatrix& j);

/// phi - I_J phi with (I_J phi)(X,Y,Z) = phi(JX,JY,Z) + phi(JX,Y,JZ) + phi(X,JY,JZ).
/// Zero iff phi has no (3,0)+(0,3) part.
Form3 type_30_defect(const Form3& phi, const RealMatrix& j);
double type_component_30_03(const Form3& phi, const RealMatrix& j);

/// Christoffel-type coefficients Gamma^i_ab, stored at (i, a, b).
using Christoffel = Form3;

enum class ConnectionKind { levi_civita, bismut_plus, bismut_minus, weyl, weyl_bismut_plus, weyl_bismut_minus };

/// Coefficients at a point from the jets of gamma and psi and the value of the Lee form
/// (ignored by the non-Weyl kinds).
Christoffel connection_coeffs(ConnectionKind kind, const JetMatrix& gamma, const JetMatrix& psi,
                              std::span<const double> lee);
/// (nabla_X Y)^i = X^a d_a Y^i + Gamma^i_ab X^a Y^b.
Vector covariant_derivative(const Christoffel& c, std::span<const Jet> x, std::span<const Jet> y);
/// (nabla_a J)^i_b = d_a J^i_b + Gamma^i_ak J^k_b - J^i_k Gamma^k_ab, stored at (i, a, b).
Form3 cov_deriv_endo(const Christoffel& c, const JetMatrix& j);
/// (nabla_a gamma)_bc, stored at (a, b, c).
Form3 cov_deriv_metric(const Christoffel& c, const JetMatrix& gamma);

enum class GkCriterion { gualtieri, crf, bismut };
enum class ConfGkCriterion { conformal_form, weyl, weyl_bismut };

const char* criterion_name(GkCriterion c);
const char* criterion_name(ConfGkCriterion c);

/// Criterion conditions plus nijenhuis_J_plus / nijenhuis_J_minus.
/// gualtieri: gualtieri_plus (d^C+ omega+ = -d psi), gualtieri_minus (d^C- omega- = d psi).
/// crf: crf_plus, crf_minus ((nabla_X J+-)Y = -+ #_gamma[(i(X^Y)d psi) o J+- + i(X^J+-Y) d psi] / 2).
/// bismut: bismut_plus, bismut_minus (nabla^+- J+- = 0), type30_plus, type30_minus.
CheckReport check_gk(const GHermitian& h, GkCriterion criterion, const CheckOptions& opts = {});

/// Criterion conditions plus nijenhuis_J_plus / nijenhuis_J_minus.
/// conformal_form: d psi +- d^C omega+- = lee ^ psi -+ (lee o J+-) ^ omega+-.
/// weyl: the crf equations with the Weyl connection and d psi - lee ^ psi.
/// weyl_bismut: Weyl-Bismut connections annihilate J+-.
CheckReport check_conf_gk(const GHermitian& h, const LeeForm& lee, ConfGkCriterion criterion,
                          const CheckOptions& opts = {});

/// Data of a metric almost contact structure (F, Z, xi) on a chart N.
struct AlmostContact {
  Endomorphism f;
  VectorField z;
  OneForm xi;
};

/// Assembles (gamma_N + dt^2, psi + kappa ^ dt, J+- = F+- + dt (x) Z+- - xi+- (x) d_t) on N x R,
/// t being the last coordinate with range [t_lo, t_hi]. The result is conformal generalized
/// Kaehler with Lee form -dt when e^t times it is generalized Kaehler.
/// Throws AlgebraViolation when F^2 = -Id + xi (x) Z, xi(Z) = 1 or F Z = 0 fails at sampled points.
Quadruple sasakian_product_quadruple(const AlmostContact& plus, const AlmostContact& minus,
                                     const SymmetricTwoTensor& gamma_n, const TwoForm& psi, const OneForm& kappa,
                                     const Chart& chart_n, const CheckOptions& opts = {});
Chart product_chart(const Chart& chart_n, double t_lo, double t_hi);

}  // namespace ggv
