#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ggv/error.hpp"
#include "ggv/jet.hpp"

namespace ggv {

/// Dense row-major matrix over double or Jet.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}
  Matrix(int rows, int cols, const T& fill)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {}

  static Matrix identity(int n) {
    Matrix m(n, n, T(0.0));
    for (int i = 0; i < n; ++i) m(i, i) = T(1.0);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const T& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

  std::span<const T> data() const { return data_; }

  std::vector<T> column(int j) const {
    std::vector<T> c(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i) c[static_cast<std::size_t>(i)] = (*this)(i, j);
    return c;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(double s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix shapes differ");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using JetMatrix = Matrix<Jet>;
using Vector = std::vector<double>;
using JetVector = std::vector<Jet>;

template <class T>
Matrix<T> operator+(Matrix<T> a, const Matrix<T>& b) { return a += b; }
template <class T>
Matrix<T> operator-(Matrix<T> a, const Matrix<T>& b) { return a -= b; }
template <class T>
Matrix<T> operator*(Matrix<T> a, double s) { return a *= s; }
template <class T>
Matrix<T> operator*(double s, Matrix<T> a) { return a *= s; }
template <class T>
Matrix<T> operator-(Matrix<T> a) { return a *= -1.0; }

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
  Matrix<T> c(a.rows(), b.cols(), T(0.0));
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

/// Scales every entry by a (possibly jet-valued) scalar.
template <class T>
Matrix<T> scaled(const T& s, Matrix<T> a) {
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) a(i, j) = s * a(i, j);
  return a;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, std::span<const T> x) {
  if (static_cast<std::size_t>(a.cols()) != x.size()) throw DimensionMismatch("matrix-vector shape mismatch");
  std::vector<T> y(static_cast<std::size_t>(a.rows()), T(0.0));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) y[static_cast<std::size_t>(i)] += a(i, j) * x[static_cast<std::size_t>(j)];
  return y;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x) {
  return a * std::span<const T>(x);
}

template <class T>
std::vector<T> operator+(std::vector<T> a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sizes differ");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

template <class T>
std::vector<T> operator-(std::vector<T> a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sizes differ");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

template <class T>
std::vector<T> operator-(std::vector<T> a) {
  for (auto& v : a) v = -v;
  return a;
}

template <class T, class S>
std::vector<T> scaled(const S& s, std::vector<T> a) {
  for (auto& v : a) v = s * v;
  return a;
}

template <class T>
T dot(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sizes differ");
  T s(0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  return dot(std::span<const T>(a), std::span<const T>(b));
}

/// Outer product a b^T.
template <class T>
Matrix<T> outer(const std::vector<T>& a, const std::vector<T>& b) {
  Matrix<T> m(static_cast<int>(a.size()), static_cast<int>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = a[i] * b[j];
  return m;
}

template <class T>
Matrix<T> from_columns(const std::vector<std::vector<T>>& cols) {
  const int n = cols.empty() ? 0 : static_cast<int>(cols.front().size());
  Matrix<T> m(n, static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (int i = 0; i < n; ++i) m(i, static_cast<int>(j)) = cols[j][static_cast<std::size_t>(i)];
  return m;
}

/// Gauss-Jordan inverse with partial pivoting on |value|.
/// Throws SingularMetric when a pivot falls below `eps` times the largest entry.
template <class T>
Matrix<T> inverse(const Matrix<T>& a, double eps = 1e-13) {
  const int n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("inverse of a non-square matrix");
  double scale = 0.0;
  for (const T& v : a.data()) scale = std::max(scale, std::abs(value_of(v)));
  if (scale == 0.0) throw SingularMetric("zero matrix is not invertible");
  Matrix<T> m = a;
  Matrix<T> inv = Matrix<T>::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(value_of(m(r, c))) > std::abs(value_of(m(piv, c)))) piv = r;
    if (std::abs(value_of(m(piv, c))) <= eps * scale) throw SingularMetric("matrix is singular");
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(m(c, j), m(piv, j));
        std::swap(inv(c, j), inv(piv, j));
      }
    const T p = m(c, c);
    for (int j = 0; j < n; ++j) {
      m(c, j) /= p;
      inv(c, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const T f = m(r, c);
      for (int j = 0; j < n; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Determinant by Gaussian elimination with partial pivoting.
template <class T>
T determinant(Matrix<T> m) {
  const int n = m.rows();
  if (m.cols() != n) throw DimensionMismatch("determinant of a non-square matrix");
  T det(1.0);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(value_of(m(r, c))) > std::abs(value_of(m(piv, c)))) piv = r;
    if (value_of(m(piv, c)) == 0.0) return T(0.0);
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      det = -det;
    }
    det *= m(c, c);
    for (int r = c + 1; r < n; ++r) {
      const T f = m(r, c) / m(c, c);
      for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

RealMatrix values(const JetMatrix& m);
Vector values(std::span<const Jet> v);

double max_abs(std::span<const double> v);
double max_abs(const RealMatrix& m);

/// True when every leading principal minor of the symmetric matrix exceeds `eps`
/// (Cholesky-style positive-definiteness certificate).
bool leading_minors_positive(const RealMatrix& m, double eps = 1e-10);

}  // namespace ggv
