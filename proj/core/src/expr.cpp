#include "ggv/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <utility>

#include "ggv/error.hpp"

namespace ggv {

struct Expression::Node {
  Kind kind = Kind::constant;
  double value = 0.0;  // constant
  int index = 0;       // coordinate index (1-based) or integer exponent
  Function fn = Function::exp;
  Expression a;
  Expression b;
};

namespace {

const char* function_name(Function f) {
  switch (f) {
    case Function::exp: return "exp";
    case Function::ln: return "ln";
    case Function::sin: return "sin";
    case Function::cos: return "cos";
    case Function::sqrt: return "sqrt";
  }
  return "?";
}

}  // namespace

Expression::Expression(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

Expression::Expression() : Expression(constant(0.0)) {}

Expression Expression::make(Kind k, double value, int index, Function fn, Expression a, Expression b) {
  return Expression(std::make_shared<const Node>(Node{k, value, index, fn, std::move(a), std::move(b)}));
}

Expression Expression::constant(double v) {
  return make(Kind::constant, v, 0, Function::exp, Expression(nullptr), Expression(nullptr));
}

Expression Expression::coordinate(int index) {
  if (index < 1) throw std::out_of_range("coordinate index must be >= 1");
  return make(Kind::coordinate, 0.0, index, Function::exp, Expression(nullptr), Expression(nullptr));
}

Expression Expression::norm2() {
  return make(Kind::norm2, 0.0, 0, Function::exp, Expression(nullptr), Expression(nullptr));
}

Expression operator+(const Expression& a, const Expression& b) {
  return Expression::make(Expression::Kind::add, 0.0, 0, Function::exp, a, b);
}
Expression operator-(const Expression& a, const Expression& b) {
  return Expression::make(Expression::Kind::sub, 0.0, 0, Function::exp, a, b);
}
Expression operator*(const Expression& a, const Expression& b) {
  return Expression::make(Expression::Kind::mul, 0.0, 0, Function::exp, a, b);
}
Expression operator/(const Expression& a, const Expression& b) {
  return Expression::make(Expression::Kind::div, 0.0, 0, Function::exp, a, b);
}

Expression operator-(const Expression& a) {
  return Expression::make(Expression::Kind::negate, 0.0, 0, Function::exp, a, Expression(nullptr));
}

Expression pow(const Expression& base, int exponent) {
  return Expression::make(Expression::Kind::powint, 0.0, exponent, Function::exp, base, Expression(nullptr));
}

Expression apply(Function f, const Expression& arg) {
  return Expression::make(Expression::Kind::apply, 0.0, 0, f, arg, Expression(nullptr));
}

Expression::Kind Expression::kind() const { return node_->kind; }
double Expression::constant_value() const { return node_->value; }
int Expression::coordinate_index() const { return node_->index; }
int Expression::exponent() const { return node_->index; }
Function Expression::function() const { return node_->fn; }
const Expression& Expression::left() const { return node_->a; }
const Expression& Expression::right() const { return node_->b; }

int Expression::max_coordinate() const {
  switch (kind()) {
    case Kind::constant:
    case Kind::norm2: return 0;
    case Kind::coordinate: return node_->index;
    case Kind::negate:
    case Kind::powint:
    case Kind::apply: return left().max_coordinate();
    default: return std::max(left().max_coordinate(), right().max_coordinate());
  }
}

bool Expression::is_coordinate_free() const {
  switch (kind()) {
    case Kind::constant: return true;
    case Kind::coordinate:
    case Kind::norm2: return false;
    case Kind::negate:
    case Kind::powint:
    case Kind::apply: return left().is_coordinate_free();
    default: return left().is_coordinate_free() && right().is_coordinate_free();
  }
}

Jet Expression::eval(std::span<const Jet> coords) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::constant: return Jet(n.value);
    case Kind::coordinate:
      if (n.index > static_cast<int>(coords.size()))
        throw DimensionMismatch("coordinate x" + std::to_string(n.index) + " outside chart of dimension " +
                                std::to_string(coords.size()));
      return coords[static_cast<std::size_t>(n.index - 1)];
    case Kind::norm2: {
      Jet s(0.0);
      for (const Jet& c : coords) s += c * c;
      return s;
    }
    case Kind::negate: return -n.a.eval(coords);
    case Kind::add: return n.a.eval(coords) + n.b.eval(coords);
    case Kind::sub: return n.a.eval(coords) - n.b.eval(coords);
    case Kind::mul: return n.a.eval(coords) * n.b.eval(coords);
    case Kind::div: return n.a.eval(coords) / n.b.eval(coords);
    case Kind::powint: return powi(n.a.eval(coords), n.index);
    case Kind::apply: {
      const Jet x = n.a.eval(coords);
      switch (n.fn) {
        case Function::exp: return exp(x);
        case Function::ln: return log(x);
        case Function::sin: return sin(x);
        case Function::cos: return cos(x);
        case Function::sqrt: return sqrt(x);
      }
    }
  }
  throw std::logic_error("unreachable expression kind");
}

Jet Expression::eval_jet(std::span<const double> p) const {
  const auto x = lift_point(p);
  return eval(x);
}

double Expression::eval_value(std::span<const double> p) const {
  std::vector<Jet> x;
  x.reserve(p.size());
  for (double v : p) x.emplace_back(v);
  return eval(x).value();
}

namespace {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string Expression::print() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::constant:
      if (std::signbit(n.value)) return "(-" + format_number(-n.value) + ")";
      return format_number(n.value);
    case Kind::coordinate: return "x" + std::to_string(n.index);
    case Kind::norm2: return "norm2";
    case Kind::negate: return "(-" + n.a.print() + ")";
    case Kind::add: return "(" + n.a.print() + " + " + n.b.print() + ")";
    case Kind::sub: return "(" + n.a.print() + " - " + n.b.print() + ")";
    case Kind::mul: return "(" + n.a.print() + " * " + n.b.print() + ")";
    case Kind::div: return "(" + n.a.print() + " / " + n.b.print() + ")";
    case Kind::powint: return "(" + n.a.print() + "^" + std::to_string(n.index) + ")";
    case Kind::apply: return std::string(function_name(n.fn)) + "(" + n.a.print() + ")";
  }
  return "?";
}

bool operator==(const Expression& x, const Expression& y) {
  if (x.node_ == y.node_) return true;
  if (!x.node_ || !y.node_) return false;
  const auto& a = *x.node_;
  const auto& b = *y.node_;
  if (a.kind != b.kind) return false;
  using K = Expression::Kind;
  switch (a.kind) {
    case K::constant: return std::memcmp(&a.value, &b.value, sizeof(double)) == 0;
    case K::coordinate: return a.index == b.index;
    case K::norm2: return true;
    case K::negate: return a.a == b.a;
    case K::powint: return a.index == b.index && a.a == b.a;
    case K::apply: return a.fn == b.fn && a.a == b.a;
    default: return a.a == b.a && a.b == b.b;
  }
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end, bad };

struct Token {
  Tok kind = Tok::end;
  std::size_t offset = 0;
  std::string_view text;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end: return "end of input";
    case Tok::bad: return "invalid character '" + std::string(t.text) + "'";
    default: return "'" + std::string(t.text) + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    skip_blank();
    Token t;
    t.offset = pos_;
    if (pos_ >= s_.size()) return t;
    const char c = s_[pos_];
    auto single = [&](Tok k) {
      t.kind = k;
      t.text = s_.substr(pos_, 1);
      ++pos_;
      return t;
    };
    switch (c) {
      case '+': return single(Tok::plus);
      case '-': return single(Tok::minus);
      case '*': return single(Tok::star);
      case '/': return single(Tok::slash);
      case '^': return single(Tok::caret);
      case '(': return single(Tok::lparen);
      case ')': return single(Tok::rparen);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
      t.kind = Tok::ident;
      t.text = s_.substr(pos_, end - pos_);
      pos_ = end;
      return t;
    }
    return single(Tok::bad);
  }

 private:
  void skip_blank() {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  Token number() {
    Token t;
    t.kind = Tok::number;
    t.offset = pos_;
    std::size_t end = pos_;
    auto digits = [&] {
      while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
    };
    digits();
    if (end < s_.size() && s_[end] == '.') {
      ++end;
      digits();
    }
    if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
      std::size_t save = end;
      ++end;
      if (end < s_.size() && (s_[end] == '+' || s_[end] == '-')) ++end;
      const std::size_t exp_start = end;
      digits();
      if (end == exp_start) end = save;  // 'e' belongs to whatever follows
    }
    t.text = s_.substr(pos_, end - pos_);
    pos_ = end;
    return t;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view text, int dim) : lex_(text), dim_(dim) { advance(); }

  Expression parse_all() {
    Expression e = expr();
    if (cur_.kind != Tok::end) fail("operator or end of input");
    return e;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(cur_.offset, expected, describe(cur_));
  }

  Expression expr() {
    Expression e = term();
    while (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
      const bool plus = cur_.kind == Tok::plus;
      advance();
      Expression r = term();
      e = plus ? e + r : e - r;
    }
    return e;
  }

  Expression term() {
    Expression e = factor();
    while (cur_.kind == Tok::star || cur_.kind == Tok::slash) {
      const bool mul = cur_.kind == Tok::star;
      advance();
      Expression r = factor();
      e = mul ? e * r : e / r;
    }
    return e;
  }

  Expression factor() {
    if (cur_.kind == Tok::minus) {
      advance();
      return -factor();
    }
    Expression base = atom();
    if (cur_.kind != Tok::caret) return base;
    advance();
    bool negative = false;
    if (cur_.kind == Tok::minus) {
      negative = true;
      advance();
    }
    if (cur_.kind != Tok::number) fail("integer exponent");
    for (char c : cur_.text)
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("integer exponent");
    int n = 0;
    auto res = std::from_chars(cur_.text.data(), cur_.text.data() + cur_.text.size(), n);
    if (res.ec != std::errc()) fail("integer exponent of moderate size");
    advance();
    return pow(base, negative ? -n : n);
  }

  Expression atom() {
    switch (cur_.kind) {
      case Tok::number: {
        double v = 0.0;
        auto res = std::from_chars(cur_.text.data(), cur_.text.data() + cur_.text.size(), v);
        if (res.ec != std::errc() || res.ptr != cur_.text.data() + cur_.text.size()) fail("real literal");
        advance();
        return Expression::constant(v);
      }
      case Tok::lparen: {
        advance();
        Expression e = expr();
        if (cur_.kind != Tok::rparen) fail("')'");
        advance();
        return e;
      }
      case Tok::ident: return identifier();
      default: fail("expression");
    }
  }

  Expression identifier() {
    const std::string_view id = cur_.text;
    if (id == "norm2") {
      advance();
      return Expression::norm2();
    }
    if (id.size() > 1 && id[0] == 'x') {
      const auto digits = id.substr(1);
      bool all_digits = true;
      for (char c : digits) all_digits = all_digits && std::isdigit(static_cast<unsigned char>(c));
      if (all_digits) {
        int idx = 0;
        auto res = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
        if (res.ec != std::errc() || idx < 1)
          fail("coordinate x1..x" + std::to_string(dim_));
        if (idx > dim_)
          throw ParseError(cur_.offset, "coordinate x1..x" + std::to_string(dim_),
                           "'" + std::string(id) + "': coordinate index exceeds chart dimension");
        advance();
        return Expression::coordinate(idx);
      }
    }
    static constexpr std::pair<const char*, Function> kFunctions[] = {
        {"exp", Function::exp}, {"ln", Function::ln}, {"sin", Function::sin},
        {"cos", Function::cos}, {"sqrt", Function::sqrt}};
    for (const auto& [name, fn] : kFunctions) {
      if (id == name) {
        advance();
        if (cur_.kind != Tok::lparen) fail("'(' after function name");
        advance();
        Expression arg = expr();
        if (cur_.kind != Tok::rparen) fail("')'");
        advance();
        return apply(fn, arg);
      }
    }
    fail("expression");
  }

  Lexer lex_;
  Token cur_;
  int dim_;
};

}  // namespace

Expression parse(std::string_view text, int dim) {
  if (dim < 1) throw std::invalid_argument("chart dimension must be >= 1");
  return Parser(text, dim).parse_all();
}

// ---------------------------------------------------------------------------
// Structural transforms

namespace {

// Zero/one pruning keeps derivative trees from growing dead branches.
Expression sum(const Expression& a, const Expression& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return a + b;
}

Expression difference(const Expression& a, const Expression& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  return a - b;
}

Expression product(const Expression& a, const Expression& b) {
  if (a.is_zero() || b.is_zero()) return Expression::constant(0.0);
  if (a.is_constant() && a.constant_value() == 1.0) return b;
  if (b.is_constant() && b.constant_value() == 1.0) return a;
  return a * b;
}

}  // namespace

Expression differentiate(const Expression& e, int index, int dim) {
  using K = Expression::Kind;
  switch (e.kind()) {
    case K::constant: return Expression::constant(0.0);
    case K::coordinate: return Expression::constant(e.coordinate_index() == index ? 1.0 : 0.0);
    case K::norm2:
      if (index > dim) return Expression::constant(0.0);
      return product(Expression::constant(2.0), Expression::coordinate(index));
    case K::negate: {
      Expression d = differentiate(e.left(), index, dim);
      return d.is_zero() ? d : -d;
    }
    case K::add: return sum(differentiate(e.left(), index, dim), differentiate(e.right(), index, dim));
    case K::sub: return difference(differentiate(e.left(), index, dim), differentiate(e.right(), index, dim));
    case K::mul:
      return sum(product(differentiate(e.left(), index, dim), e.right()),
                 product(e.left(), differentiate(e.right(), index, dim)));
    case K::div: {
      const Expression num = difference(product(differentiate(e.left(), index, dim), e.right()),
                                        product(e.left(), differentiate(e.right(), index, dim)));
      if (num.is_zero()) return num;
      return num / pow(e.right(), 2);
    }
    case K::powint: {
      const int n = e.exponent();
      const Expression db = differentiate(e.left(), index, dim);
      if (n == 0 || db.is_zero()) return Expression::constant(0.0);
      const Expression lower = n == 1 ? Expression::constant(1.0) : pow(e.left(), n - 1);
      return product(product(Expression::constant(n), lower), db);
    }
    case K::apply: {
      const Expression& a = e.left();
      const Expression da = differentiate(a, index, dim);
      if (da.is_zero()) return da;
      switch (e.function()) {
        case Function::exp: return product(e, da);
        case Function::ln: return da / a;
        case Function::sin: return product(apply(Function::cos, a), da);
        case Function::cos: return -product(apply(Function::sin, a), da);
        case Function::sqrt: return da / product(Expression::constant(2.0), e);
      }
    }
  }
  throw std::logic_error("unreachable expression kind");
}

Expression substitute(const Expression& e, std::span<const Expression> repl) {
  using K = Expression::Kind;
  switch (e.kind()) {
    case K::constant: return e;
    case K::coordinate: {
      const auto i = static_cast<std::size_t>(e.coordinate_index());
      if (i > repl.size()) throw DimensionMismatch("substitution misses coordinate x" + std::to_string(i));
      return repl[i - 1];
    }
    case K::norm2: {
      Expression s = Expression::constant(0.0);
      bool first = true;
      for (const auto& r : repl) {
        s = first ? pow(r, 2) : s + pow(r, 2);
        first = false;
      }
      return s;
    }
    case K::negate: return -substitute(e.left(), repl);
    case K::add: return substitute(e.left(), repl) + substitute(e.right(), repl);
    case K::sub: return substitute(e.left(), repl) - substitute(e.right(), repl);
    case K::mul: return substitute(e.left(), repl) * substitute(e.right(), repl);
    case K::div: return substitute(e.left(), repl) / substitute(e.right(), repl);
    case K::powint: return pow(substitute(e.left(), repl), e.exponent());
    case K::apply: return apply(e.function(), substitute(e.left(), repl));
  }
  throw std::logic_error("unreachable expression kind");
}

Expression fold_constants(const Expression& e) {
  using K = Expression::Kind;
  if (e.kind() == K::constant || e.kind() == K::coordinate || e.kind() == K::norm2) return e;
  if (e.is_coordinate_free()) {
    try {
      return Expression::constant(e.eval(std::span<const Jet>{}).value());
    } catch (const DomainError&) {
      return e;
    }
  }
  switch (e.kind()) {
    case K::negate: return -fold_constants(e.left());
    case K::add: return fold_constants(e.left()) + fold_constants(e.right());
    case K::sub: return fold_constants(e.left()) - fold_constants(e.right());
    case K::mul: return fold_constants(e.left()) * fold_constants(e.right());
    case K::div: return fold_constants(e.left()) / fold_constants(e.right());
    case K::powint: return pow(fold_constants(e.left()), e.exponent());
    case K::apply: return apply(e.function(), fold_constants(e.left()));
    default: return e;
  }
}

}  // namespace ggv
