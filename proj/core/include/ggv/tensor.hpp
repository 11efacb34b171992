#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ggv/expr.hpp"
#include "ggv/linalg.hpp"

namespace ggv {

using Point = std::vector<double>;
using ScalarField = Expression;

/// Local coordinate chart with a sampling box and an optional excluded region.
struct Chart {
  int dim = 0;
  std::vector<std::pair<double, double>> box;
  /// Points where this evaluates to <= 0 (or is undefined) are excluded.
  std::optional<Expression> exclusion;

  Chart() = default;
  /// Chart with the same interval on every coordinate.
  Chart(int dim, double lo, double hi);

  bool in_box(std::span<const double> p) const;
  bool admits(std::span<const double> p) const;
};

namespace detail {

struct VectorTag {};
struct CovectorTag {};

/// m Expression components.
template <class Tag>
class ExprArray {
 public:
  ExprArray() = default;
  explicit ExprArray(int dim) : c_(static_cast<std::size_t>(dim)) {}
  explicit ExprArray(std::vector<Expression> c) : c_(std::move(c)) {}

  /// The i-th coordinate vector field or differential, 0-based.
  static ExprArray basis(int i, int dim) {
    ExprArray a(dim);
    a.c_[static_cast<std::size_t>(i)] = Expression::constant(1.0);
    return a;
  }

  int dim() const { return static_cast<int>(c_.size()); }
  const Expression& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  Expression& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  std::span<const Expression> components() const { return c_; }

  JetVector eval(std::span<const Jet> x) const {
    JetVector v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i].is_zero() ? Jet(0.0) : c_[i].eval(x);
    return v;
  }

 private:
  std::vector<Expression> c_;
};

enum class Symmetry { none, symmetric, antisymmetric };

struct EndoTag {};
struct BivectorTag {};
struct TwoFormTag {};
struct SymTag {};

/// m x m Expression components; symmetric and antisymmetric kinds store only
/// the upper triangle (with or without diagonal) and mirror on access.
template <Symmetry Sym, class Tag>
class ExprMatrix {
 public:
  ExprMatrix() = default;
  explicit ExprMatrix(int dim) : dim_(dim), c_(storage_size(dim)) {}

  int dim() const { return dim_; }

  /// Entry (i, j), 0-based.
  Expression at(int i, int j) const {
    if constexpr (Sym == Symmetry::antisymmetric) {
      if (i == j) return Expression::constant(0.0);
      if (i > j) {
        const Expression& e = c_[slot(j, i)];
        return e.is_zero() ? e : -e;
      }
    }
    if constexpr (Sym == Symmetry::symmetric) {
      if (i > j) std::swap(i, j);
    }
    return c_[slot(i, j)];
  }

  /// Sets entry (i, j); the mirrored entry follows from the symmetry kind.
  void set(int i, int j, const Expression& e) {
    if (i < 0 || j < 0 || i >= dim_ || j >= dim_) throw std::out_of_range("tensor index out of range");
    if constexpr (Sym == Symmetry::antisymmetric) {
      if (i == j) {
        if (!e.is_zero()) throw std::invalid_argument("diagonal of an antisymmetric tensor is zero");
        return;
      }
      if (i > j) {
        c_[slot(j, i)] = e.is_zero() ? e : -e;
        return;
      }
    }
    if constexpr (Sym == Symmetry::symmetric) {
      if (i > j) std::swap(i, j);
    }
    c_[slot(i, j)] = e;
  }

  JetMatrix eval(std::span<const Jet> x) const {
    JetMatrix m(dim_, dim_, Jet(0.0));
    for (int i = 0; i < dim_; ++i)
      for (int j = first_col(i); j < dim_; ++j) {
        const Expression& e = c_[slot(i, j)];
        if (e.is_zero()) continue;
        const Jet v = e.eval(x);
        m(i, j) = v;
        if constexpr (Sym == Symmetry::antisymmetric) m(j, i) = -v;
        if constexpr (Sym == Symmetry::symmetric) m(j, i) = v;
      }
    return m;
  }

  RealMatrix values(std::span<const double> p) const {
    const auto x = lift_point(p);
    return ggv::values(eval(x));
  }

 private:
  static std::size_t storage_size(int m) {
    const auto n = static_cast<std::size_t>(m);
    if constexpr (Sym == Symmetry::none) return n * n;
    if constexpr (Sym == Symmetry::symmetric) return n * (n + 1) / 2;
    return n * (n - (n > 0 ? 1 : 0)) / 2;
  }
  static int first_col(int i) {
    if constexpr (Sym == Symmetry::none) return 0;
    if constexpr (Sym == Symmetry::symmetric) return i;
    return i + 1;
  }
  std::size_t slot(int i, int j) const {
    if constexpr (Sym == Symmetry::none) return static_cast<std::size_t>(i * dim_ + j);
    // Row-major packed upper triangle starting at column first_col(i).
    std::size_t off = 0;
    for (int r = 0; r < i; ++r) off += static_cast<std::size_t>(dim_ - first_col(r));
    return off + static_cast<std::size_t>(j - first_col(i));
  }

  int dim_ = 0;
  std::vector<Expression> c_;
};

}  // namespace detail

using VectorField = detail::ExprArray<detail::VectorTag>;
using OneForm = detail::ExprArray<detail::CovectorTag>;
/// A^i_j stored at (i, j), so the matrix acts on column vectors.
using Endomorphism = detail::ExprMatrix<detail::Symmetry::none, detail::EndoTag>;
/// pi^{ij} at (i, j).
using Bivector = detail::ExprMatrix<detail::Symmetry::antisymmetric, detail::BivectorTag>;
/// sigma_{ij} at (i, j).
using TwoForm = detail::ExprMatrix<detail::Symmetry::antisymmetric, detail::TwoFormTag>;
using SymmetricTwoTensor = detail::ExprMatrix<detail::Symmetry::symmetric, detail::SymTag>;

Endomorphism identity_endomorphism(int dim);

/// Componentwise product of a field with a scalar expression (synthesized product nodes).
template <class Tag>
detail::ExprArray<Tag> scale(const Expression& f, const detail::ExprArray<Tag>& a) {
  detail::ExprArray<Tag> r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    if (!a[i].is_zero()) r[i] = f * a[i];
  return r;
}

template <detail::Symmetry Sym, class Tag>
detail::ExprMatrix<Sym, Tag> scale(const Expression& f, const detail::ExprMatrix<Sym, Tag>& a) {
  detail::ExprMatrix<Sym, Tag> r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      if constexpr (Sym != detail::Symmetry::none) {
        if (j < i || (Sym == detail::Symmetry::antisymmetric && j == i)) continue;
      }
      const Expression e = a.at(i, j);
      if (!e.is_zero()) r.set(i, j, f * e);
    }
  return r;
}

/// The differential of a scalar field, built by structural differentiation.
OneForm differential(const ScalarField& f, int dim);
/// The exterior derivative of a 1-form as a TwoForm of expressions.
TwoForm differential(const OneForm& a);

}  // namespace ggv
