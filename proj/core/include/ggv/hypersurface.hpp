#pragma once

#include <vector>

#include "ggv/ghermitian.hpp"

namespace ggv {

/// A hypersurface of an m-dimensional chart given by m expressions in the
/// parameters u1..u_{m-1} (written x1..x_{m-1}).
///
/// The tangent frame d(param)/du is differentiated structurally once at
/// construction, so frame derivatives are again first-order jets of stored expressions.
class Hypersurface {
 public:
  Hypersurface() = default;
  Hypersurface(std::vector<Expression> param, Chart param_chart);

  int ambient_dim() const { return static_cast<int>(param_.size()); }
  int dim() const { return param_chart_.dim; }
  const std::vector<Expression>& param() const { return param_; }
  const Chart& param_chart() const { return param_chart_; }
  /// frame()[i][a] = d param_i / d u_a.
  const std::vector<std::vector<Expression>>& frame() const { return frame_; }

  /// Multiplies the chosen unit normal by -1.
  bool flip_normal = false;

  /// The same hypersurface in the parameters u' = u / k, i.e. param(k u').
  Hypersurface rescaled(double k) const;

  /// Point of the ambient chart and frame jets at u, differentiable in u.
  std::vector<Jet> point_jets(std::span<const Jet> u) const;
  JetMatrix frame_jets(std::span<const Jet> u) const;

 private:
  std::vector<Expression> param_;
  Chart param_chart_;
  std::vector<std::vector<Expression>> frame_;
};

struct FrameNormal {
  /// m x (m-1), columns are the tangent frame.
  RealMatrix frame;
  Vector normal;
};

/// Unit normal: gamma(nu, frame_a) = 0, gamma(nu, nu) = 1, positive gamma-pairing with the
/// radial vector x^i d_i when |pairing| > 1e-6, else det[frame | nu] > 0.
/// Throws RankDeficient when the frame is degenerate at u.
FrameNormal tangent_frame_normal(const Hypersurface& n, const SymmetricTwoTensor& gamma, const Point& u);

/// Induced metric almost contact structure in frame coordinates, differentiable in u:
/// Z = -J nu, xi = flat_gamma Z, F = tangential part of J. Also the induced metric h.
struct InducedContact {
  JetMatrix f;
  JetVector z;
  JetVector xi;
  JetMatrix h;
};
InducedContact induced_contact(const Hypersurface& n, const SymmetricTwoTensor& gamma, const Endomorphism& j,
                               std::span<const Jet> u);
InducedContact induced_contact(const Hypersurface& n, const SymmetricTwoTensor& gamma, const Endomorphism& j,
                               const Point& u);

/// Xi_ab = gamma(F X_a, X_b) in frame coordinates.
JetMatrix fundamental_form(const InducedContact& c);
/// max |(i* omega)_ab - Xi_ab| at u with omega = J^t gamma.
double pullback_check(const Hypersurface& n, const SymmetricTwoTensor& gamma, const Endomorphism& j,
                      const Point& u);

/// Conditions: condsupl1 (F (L_Z F) F = 0), condsupl2 (L_Z F = (xi o L_Z F) (x) Z),
/// cr_in_d ([X,Y] - [FX,FY] in D), cr_type ([FX,Y] + [X,FY] = F([X,Y] - [FX,FY]))
/// for X, Y running over the projections -F^2 d_a of the parameter fields.
CheckReport check_crf(const Hypersurface& n, const SymmetricTwoTensor& gamma, const Endomorphism& j,
                      const CheckOptions& opts = {});

/// Condition: lee_tangent (lee(frame_a) = 0).
CheckReport check_lee_hypersurface(const Hypersurface& n, const LeeForm& lee, const CheckOptions& opts = {});

/// lee(nu) Xi+- = -+ i(Z+-) i*(d psi +- d^C omega+-), with i(Z) the first-slot contraction.
/// Conditions: lee_tangent, lee1_plus, lee1_minus.
CheckReport check_lee1(const Hypersurface& n, const GHermitian& h, const LeeForm& lee, const CheckOptions& opts = {});

/// Conditions: ambient_d_omega, ambient_nijenhuis (the Kaehler precondition at the points
/// of N), closed_fundamental (max |d Xi| in the parameters).
CheckReport check_closed_fundamental(const Hypersurface& n, const SymmetricTwoTensor& gamma, const Endomorphism& j,
                                     const CheckOptions& opts = {});

}  // namespace ggv
