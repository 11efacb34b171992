#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ggv/jet.hpp"

namespace ggv {

enum class Function { exp, ln, sin, cos, sqrt };

/// Immutable arithmetic expression over chart coordinates x1..xm.
///
/// Expressions are the single definition language for tensor components.
/// Nodes are shared, so copying an Expression is cheap and sub-expressions
/// may appear in many trees.
class Expression {
 public:
  enum class Kind { constant, coordinate, negate, add, sub, mul, div, powint, apply, norm2 };

  /// The constant 0.
  Expression();

  static Expression constant(double v);
  /// Coordinate x_index, 1-based.
  static Expression coordinate(int index);
  /// Sum of squares of all chart coordinates.
  static Expression norm2();

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator/(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a);
  friend Expression pow(const Expression& base, int exponent);
  friend Expression apply(Function f, const Expression& arg);

  Kind kind() const;
  double constant_value() const;
  int coordinate_index() const;
  int exponent() const;
  Function function() const;
  /// Operand of unary nodes, or the left operand of binary nodes.
  const Expression& left() const;
  const Expression& right() const;

  bool is_constant() const { return kind() == Kind::constant; }
  bool is_zero() const { return is_constant() && constant_value() == 0.0; }
  /// Highest coordinate index referenced (0 when none).
  int max_coordinate() const;
  /// True when the tree references no coordinate and no norm2.
  bool is_coordinate_free() const;

  /// Evaluates with the given coordinate jets (chart dimension = coords.size()).
  /// The jets may be functions of other variables, which composes the chain rule.
  Jet eval(std::span<const Jet> coords) const;
  /// Value and gradient at a point of the chart.
  Jet eval_jet(std::span<const double> p) const;
  double eval_value(std::span<const double> p) const;

  /// Canonical text; parse(print()) reproduces the tree for every parsed expression.
  std::string print() const;

  /// Structural equality (constants compared bitwise).
  friend bool operator==(const Expression& a, const Expression& b);

 private:
  struct Node;
  explicit Expression(std::shared_ptr<const Node> n);
  static Expression make(Kind k, double value, int index, Function fn, Expression a, Expression b);
  std::shared_ptr<const Node> node_;
};

Expression pow(const Expression& base, int exponent);
Expression apply(Function f, const Expression& arg);

/// Parses `text` (grammar in the README) binding coordinates to a chart of
/// dimension `dim`. Throws ParseError.
Expression parse(std::string_view text, int dim);

/// Partial derivative with respect to coordinate `index` (1-based), built by the
/// structural rules without simplification. `dim` is the chart dimension,
/// needed to expand norm2.
Expression differentiate(const Expression& e, int index, int dim);

/// Replaces coordinate x_i by replacements[i-1].
/// norm2 expands to the sum of squared replacements.
Expression substitute(const Expression& e, std::span<const Expression> replacements);

/// Collapses every coordinate-free subtree into a single constant.
Expression fold_constants(const Expression& e);

}  // namespace ggv
