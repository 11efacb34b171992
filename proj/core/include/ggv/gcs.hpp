#pragma once

#include <optional>
#include <string>

#include "ggv/bigtangent.hpp"
#include "ggv/report.hpp"
#include "ggv/tensor.hpp"

namespace ggv {

/// Classical triple (A, pi, sigma) of a generalized almost complex structure.
struct GcsData {
  Endomorphism a;
  Bivector pi;
  TwoForm sigma;
  Chart chart;

  int dim() const { return chart.dim; }
  PhiMatrix matrix() const { return {a, pi, sigma}; }
};

/// A closed 1-form governing conformal changes.
using LeeForm = OneForm;

/// Conditions: alg_pi (AP = PA^t), alg_sigma (A^t S = S A), alg_square (A^2 = -Id - #_pi flat_sigma).
/// Residuals are raw max-abs differences.
CheckReport check_algebraic(const GcsData& s, const CheckOptions& opts = {});

/// Conditions: poisson, concomitant, nijenhuis_A, associated_form, nijenhuis_phi.
CheckReport check_integrability(const GcsData& s, const CheckOptions& opts = {});

/// The four integrability conditions with their Lee-form right-hand sides.
/// Conditions: poisson_conf, concomitant_conf, nijenhuis_A_conf, associated_form_conf.
CheckReport check_conformal_integrability(const GcsData& s, const LeeForm& lee, const CheckOptions& opts = {});

/// N_A - #_pi[i(X^Y) d sigma] = -#_pi[i(X^Y)(d tau ^ sigma)]. Condition: nijenhuis_A_dtau.
CheckReport check_ptiii_crosscheck(const GcsData& s, const ScalarField& tau, const CheckOptions& opts = {});

/// (A, e^tau pi, e^-tau sigma). The structure obtained satisfies the conformal
/// conditions with Lee form -d tau whenever s is integrable.
GcsData transform_conformal(const GcsData& s, const ScalarField& tau);

/// e^tau and e^-tau as expressions; tau = ln(f) gives f and 1/f exactly.
Expression exp_of(const ScalarField& tau);
Expression exp_of_negative(const ScalarField& tau);

/// Raw max |d lee| over sampled points. Condition: lee_closed.
CheckReport check_lee_closed(const LeeForm& lee, const Chart& chart, const CheckOptions& opts = {});

struct Hypothesis {
  bool holds = true;
  /// A point where an eigenvalue sat too close to the real axis to decide.
  bool inconclusive = false;
  std::optional<Point> witness;
  std::string detail;
};

struct RigidityReport {
  /// pi non-degenerate.
  Hypothesis nondegenerate_pi;
  /// A^2 != -Id and A has no real eigenvalue.
  Hypothesis no_real_eigenvalue;
  /// rank pi > 2 and sigma non-degenerate.
  Hypothesis rank_and_sigma;

  bool all() const { return nondegenerate_pi.holds && no_real_eigenvalue.holds && rank_and_sigma.holds; }
  bool any() const { return nondegenerate_pi.holds || no_real_eigenvalue.holds || rank_and_sigma.holds; }
};

/// Pointwise test of the hypotheses under which conformal changes by non-constant functions break integrability.
RigidityReport check_rigidity_hypotheses(const GcsData& s, const CheckOptions& opts = {});

}  // namespace ggv
