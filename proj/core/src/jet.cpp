#include "ggv/jet.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ggv/error.hpp"

namespace ggv {

Jet::Jet(double value, int dim) : value_(value), dim_(dim) {
  if (dim < 0 || dim > kMaxJetDim) {
    throw DimensionMismatch("jet dimension " + std::to_string(dim) + " outside [0, " +
                            std::to_string(kMaxJetDim) + "]");
  }
}

Jet Jet::variable(double value, int index, int dim) {
  if (index < 0 || index >= dim) throw std::out_of_range("jet variable index out of range");
  Jet j(value, dim);
  j.grad_[static_cast<std::size_t>(index)] = 1.0;
  return j;
}

void Jet::set_d(int i, double v) {
  if (i < 0 || i >= dim_) throw std::out_of_range("jet gradient index out of range");
  grad_[static_cast<std::size_t>(i)] = v;
}

int common_dim(const Jet& a, const Jet& b) {
  if (a.dim_ == b.dim_ || b.dim_ == 0) return a.dim_;
  if (a.dim_ == 0) return b.dim_;
  throw DimensionMismatch("jet dimensions differ: " + std::to_string(a.dim_) + " vs " +
                          std::to_string(b.dim_));
}

Jet& Jet::operator+=(const Jet& o) {
  dim_ = common_dim(*this, o);
  value_ += o.value_;
  for (int i = 0; i < o.dim_; ++i) grad_[i] += o.grad_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  dim_ = common_dim(*this, o);
  value_ -= o.value_;
  for (int i = 0; i < o.dim_; ++i) grad_[i] -= o.grad_[i];
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  const int n = common_dim(*this, o);
  for (int i = 0; i < n; ++i) grad_[i] = grad_[i] * o.value_ + value_ * o.grad_[i];
  dim_ = n;
  value_ *= o.value_;
  return *this;
}

Jet& Jet::operator/=(const Jet& o) {
  if (o.value_ == 0.0) throw DomainError("division by zero");
  const int n = common_dim(*this, o);
  const double q = value_ / o.value_;
  for (int i = 0; i < n; ++i) grad_[i] = (grad_[i] - q * o.grad_[i]) / o.value_;
  dim_ = n;
  value_ = q;
  return *this;
}

Jet& Jet::operator*=(double s) {
  value_ *= s;
  for (int i = 0; i < dim_; ++i) grad_[i] *= s;
  return *this;
}

Jet operator-(const Jet& a) {
  Jet r = a;
  r *= -1.0;
  return r;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator*(Jet a, const Jet& b) { return a *= b; }
Jet operator/(Jet a, const Jet& b) { return a /= b; }
Jet operator+(Jet a, double b) { return a += Jet(b); }
Jet operator+(double a, Jet b) { return b += Jet(a); }
Jet operator-(Jet a, double b) { return a -= Jet(b); }
Jet operator-(double a, const Jet& b) { return Jet(a) - b; }
Jet operator*(Jet a, double b) { return a *= b; }
Jet operator*(double a, Jet b) { return b *= a; }
Jet operator/(Jet a, double b) { return a /= Jet(b); }
Jet operator/(double a, const Jet& b) { return Jet(a) / b; }

namespace {

// Chain rule: f(x) with f'(x) = slope.
Jet chain(const Jet& x, double value, double slope) {
  Jet r(value, x.dim());
  for (int i = 0; i < x.dim(); ++i) r.set_d(i, slope * x.d(i));
  return r;
}

}  // namespace

Jet powi(const Jet& x, int n) {
  if (n == 0) return Jet(1.0, x.dim());
  if (n < 0 && x.value() == 0.0) throw DomainError("negative power of zero");
  const double v = x.value();
  return chain(x, std::pow(v, n), n * std::pow(v, n - 1));
}

Jet exp(const Jet& x) {
  const double e = std::exp(x.value());
  return chain(x, e, e);
}

Jet log(const Jet& x) {
  if (!(x.value() > 0.0)) throw DomainError("ln of non-positive value");
  return chain(x, std::log(x.value()), 1.0 / x.value());
}

Jet sin(const Jet& x) { return chain(x, std::sin(x.value()), std::cos(x.value())); }

Jet cos(const Jet& x) { return chain(x, std::cos(x.value()), -std::sin(x.value())); }

Jet sqrt(const Jet& x) {
  if (!(x.value() > 0.0)) throw DomainError("sqrt of non-positive value");
  const double s = std::sqrt(x.value());
  return chain(x, s, 0.5 / s);
}

Jet lift_coordinate(int i, std::span<const double> p) {
  const int m = static_cast<int>(p.size());
  if (i < 1 || i > m) throw std::out_of_range("coordinate index out of range");
  return Jet::variable(p[static_cast<std::size_t>(i - 1)], i - 1, m);
}

std::vector<Jet> lift_point(std::span<const double> p) {
  std::vector<Jet> out;
  out.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out.push_back(lift_coordinate(static_cast<int>(i) + 1, p));
  return out;
}

}  // namespace ggv
