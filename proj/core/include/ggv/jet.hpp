#pragma once

#include <array>
#include <span>
#include <vector>

namespace ggv {

/// Largest number of independent variables a Jet can carry.
inline constexpr int kMaxJetDim = 8;

/// First-order jet: a value with its gradient with respect to `dim` chart
/// coordinates. A jet of dimension 0 is a plain constant and combines with
/// jets of any dimension.
class Jet {
 public:
  constexpr Jet() = default;
  /// Constant jet (zero gradient).
  explicit Jet(double value, int dim = 0);

  /// The coordinate function x_index (0-based) at `value`.
  static Jet variable(double value, int index, int dim);

  double value() const { return value_; }
  int dim() const { return dim_; }
  double d(int i) const { return i < dim_ ? grad_[static_cast<std::size_t>(i)] : 0.0; }
  std::span<const double> grad() const { return {grad_.data(), static_cast<std::size_t>(dim_)}; }
  void set_d(int i, double v);

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator*=(double s);

  friend Jet operator-(const Jet& a);
  friend bool operator==(const Jet&, const Jet&) = default;

 private:
  double value_ = 0.0;
  std::array<double, kMaxJetDim> grad_{};
  int dim_ = 0;

  friend int common_dim(const Jet&, const Jet&);
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(Jet a, const Jet& b);
Jet operator/(Jet a, const Jet& b);
Jet operator+(Jet a, double b);
Jet operator+(double a, Jet b);
Jet operator-(Jet a, double b);
Jet operator-(double a, const Jet& b);
Jet operator*(Jet a, double b);
Jet operator*(double a, Jet b);
Jet operator/(Jet a, double b);
Jet operator/(double a, const Jet& b);

/// Integer power; negative exponents require a non-zero base.
Jet powi(const Jet& x, int n);
Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sin(const Jet& x);
Jet cos(const Jet& x);
/// Requires a strictly positive argument (the derivative is singular at 0).
Jet sqrt(const Jet& x);

/// Coordinate i (1-based) of p as a jet over dim(p) variables.
/// Throws std::out_of_range when i is not in [1, dim(p)].
Jet lift_coordinate(int i, std::span<const double> p);
/// All coordinates of p as jets.
std::vector<Jet> lift_point(std::span<const double> p);

inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.value(); }

}  // namespace ggv
