#pragma once

#include <span>
#include <vector>

#include "ggv/linalg.hpp"
#include "ggv/tensor.hpp"

namespace ggv {

/// Dense rank-3 array of values, used for 3-forms and 3-vectors.
class Form3 {
 public:
  Form3() = default;
  explicit Form3(int dim) : dim_(dim), v_(static_cast<std::size_t>(dim * dim * dim), 0.0) {}

  int dim() const { return dim_; }
  double& operator()(int i, int j, int k) { return v_[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return v_[index(i, j, k)]; }
  std::span<const double> data() const { return v_; }

  /// phi(X, Y, Z) for vector values X, Y, Z.
  double apply(std::span<const double> x, std::span<const double> y, std::span<const double> z) const;
  /// (phi o (J,J,J))(a,b,c) = phi(J e_a, J e_b, J e_c).
  Form3 pulled_by(const RealMatrix& j) const;
  /// Pullback along the columns of `frame` (an m x k matrix) to a k-dimensional array.
  Form3 restricted(const RealMatrix& frame) const;

  Form3& operator+=(const Form3& o);
  Form3& operator-=(const Form3& o);
  Form3& operator*=(double s);

 private:
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>((i * dim_ + j) * dim_ + k);
  }
  int dim_ = 0;
  std::vector<double> v_;
};

Form3 operator+(Form3 a, const Form3& b);
Form3 operator-(Form3 a, const Form3& b);
Form3 operator*(double s, Form3 a);

// Jet-level kernels. Fields are given by their jets at one point; results are values.

/// [X,Y]^i = X^l d_l Y^i - Y^l d_l X^i.
Vector lie_bracket(std::span<const Jet> x, std::span<const Jet> y);
/// (L_X a)_i = X^l d_l a_i + a_l d_i X^l.
Vector lie_derivative(std::span<const Jet> x, std::span<const Jet> a);
/// (L_Z A)(X) = [Z, AX] - A[Z, X].
Vector lie_derivative_endo(const JetMatrix& a, std::span<const Jet> z, std::span<const Jet> x);
/// (da)_ij = d_i a_j - d_j a_i.
RealMatrix exterior_derivative(std::span<const Jet> a);
/// (ds)_ijk = d_i s_jk + d_j s_ki + d_k s_ij.
Form3 exterior_derivative(const JetMatrix& s);
/// [pi,pi]^{ijk} = 2 sum_l (pi^{li} d_l pi^{jk} + pi^{lj} d_l pi^{ki} + pi^{lk} d_l pi^{ij}).
Form3 schouten_square(const JetMatrix& p);
/// N_A(X,Y) = [AX,AY] - A[X,AY] - A[AX,Y] + A^2[X,Y].
Vector nijenhuis_endo(const JetMatrix& a, std::span<const Jet> x, std::span<const Jet> y);
/// R(a,X) = #_pi(L_X(a o A) - L_{AX} a) - (L_{#_pi a} A)(X).
Vector schouten_concomitant(const JetMatrix& p, const JetMatrix& a, std::span<const Jet> alpha,
                            std::span<const Jet> x);
/// (sigma_A)_ij = A^l_i sigma_lj, kept as jets so it can be differentiated.
JetMatrix associated_form(const JetMatrix& s, const JetMatrix& a);

// Musical maps and algebra; templated over double and Jet.

/// (#_pi a)^i = pi^{li} a_l.
template <class T, class V>
std::vector<T> sharp_pi(const Matrix<T>& p, const V& a) {
  return p.transposed() * std::span<const T>(a);
}
/// (flat_sigma X)_i = sigma_{li} X^l.
template <class T, class V>
std::vector<T> flat_sigma(const Matrix<T>& s, const V& x) {
  return s.transposed() * std::span<const T>(x);
}
/// (a o A)_j = a_i A^i_j.
template <class T, class V>
std::vector<T> compose(const V& a, const Matrix<T>& endo) {
  return endo.transposed() * std::span<const T>(a);
}
template <class T, class V>
std::vector<T> flat_gamma(const Matrix<T>& g, const V& x) {
  return g * std::span<const T>(x);
}
/// Throws SingularMetric when gamma is not invertible.
template <class T, class V>
std::vector<T> sharp_gamma(const Matrix<T>& g, const V& a) {
  return inverse(g) * std::span<const T>(a);
}

/// (a ^ b)_ijk = a_i b_jk - a_j b_ik + a_k b_ij; also V ^ pi for a vector and a bivector.
Form3 wedge(std::span<const double> a, const RealMatrix& b);
/// (i(X ^ Y) phi)_k = phi(X, Y, e_k).
Vector interior_xy(const Form3& phi, std::span<const double> x, std::span<const double> y);
/// sigma(AX, Y).
double sigma_assoc(const RealMatrix& s, const RealMatrix& a, std::span<const double> x, std::span<const double> y);

// Field-level conveniences evaluated at a chart point.

Vector lie_bracket(const VectorField& x, const VectorField& y, const Point& p);
Vector lie_derivative_oneform(const VectorField& x, const OneForm& a, const Point& p);
RealMatrix exterior_derivative(const OneForm& a, const Point& p);
Form3 exterior_derivative(const TwoForm& s, const Point& p);
Form3 schouten_square(const Bivector& pi, const Point& p);
Vector nijenhuis_endo(const Endomorphism& a, const VectorField& x, const VectorField& y, const Point& p);
Vector schouten_concomitant(const Bivector& pi, const Endomorphism& a, const OneForm& alpha,
                            const VectorField& x, const Point& p);

/// Max-abs of the antisymmetric defect of a matrix / rank-3 array.
double antisymmetry_defect(const RealMatrix& m);
double antisymmetry_defect(const Form3& f);

double max_abs(const Form3& f);

}  // namespace ggv
