#include "doctest.h"
#include "support.hpp"

#include <stdexcept>

using namespace ggv;
using namespace ggv::test;

namespace {
Jet jet2(double v, double d0, double d1) {
  Jet j(v, 2);
  j.set_d(0, d0);
  j.set_d(1, d1);
  return j;
}
}  // namespace

TEST_CASE("jet arithmetic examples") {
  const Jet prod = jet2(2, 1, 0) * jet2(3, 0, 1);
  CHECK(prod.value() == 6.0);
  CHECK(prod.d(0) == 3.0);
  CHECK(prod.d(1) == 2.0);

  const Jet ex = exp(jet2(0, 1, 1));
  CHECK(ex.value() == 1.0);
  CHECK(ex.d(0) == 1.0);
  CHECK(ex.d(1) == 1.0);

  const Jet q = jet2(1, 0, 0) / jet2(2, 1, 0);
  CHECK(q.value() == 0.5);
  CHECK(q.d(0) == -0.25);
  CHECK(q.d(1) == 0.0);
}

TEST_CASE("elementary functions follow the chain rule") {
  const Jet a = jet2(0.7, 1.0, -2.0);
  const auto check = [](const Jet& r, double v, double dv) {
    CHECK(r.value() == doctest::Approx(v));
    CHECK(r.d(0) == doctest::Approx(dv));
    CHECK(r.d(1) == doctest::Approx(-2.0 * dv));
  };
  check(sin(a), std::sin(0.7), std::cos(0.7));
  check(cos(a), std::cos(0.7), -std::sin(0.7));
  check(log(a), std::log(0.7), 1.0 / 0.7);
  check(sqrt(a), std::sqrt(0.7), 0.5 / std::sqrt(0.7));
  check(powi(a, 3), 0.343, 3 * 0.49);
  check(powi(a, -2), 1 / 0.49, -2 / 0.343);
  check(powi(a, 0), 1.0, 0.0);
}

TEST_CASE("constants combine with jets of any dimension") {
  const Jet k(4.0);
  const Jet v = Jet::variable(2.0, 1, 3);
  const Jet r = k * v + 1.0;
  CHECK(r.dim() == 3);
  CHECK(r.value() == 9.0);
  CHECK(r.d(1) == 4.0);
  CHECK(r.d(0) == 0.0);
}

TEST_CASE("lift_coordinate") {
  const Point p{5.0, 7.0};
  const Jet a = lift_coordinate(1, p);
  CHECK(a.value() == 5.0);
  CHECK(a.d(0) == 1.0);
  CHECK(a.d(1) == 0.0);
  const Jet b = lift_coordinate(2, p);
  CHECK(b.value() == 7.0);
  CHECK(b.d(0) == 0.0);
  CHECK(b.d(1) == 1.0);
  CHECK_THROWS_AS(lift_coordinate(3, p), std::out_of_range);
  CHECK_THROWS_AS(lift_coordinate(0, p), std::out_of_range);
}

TEST_CASE("composite gradients equal the analytic derivative") {
  // f = x1^2 x2 / (1 + x2^2) - 3 x1
  for (const Point& p : random_points(2, 10, 3)) {
    const auto xs = lift_point(p);
    const Jet f = powi(xs[0], 2) * xs[1] / (1.0 + powi(xs[1], 2)) - 3.0 * xs[0];
    const double x1 = p[0], x2 = p[1], den = 1 + x2 * x2;
    const double d0 = 2 * x1 * x2 / den - 3;
    const double d1 = x1 * x1 * (1 - x2 * x2) / (den * den);
    CHECK(std::abs(f.d(0) - d0) <= 1e-12 * std::max(1.0, std::abs(d0)));
    CHECK(std::abs(f.d(1) - d1) <= 1e-12 * std::max(1.0, std::abs(d1)));
  }
}

TEST_CASE("composing jets applies the chain rule through expressions") {
  // Evaluate x1*x2 at coordinates that are themselves functions of (u1, u2).
  const Point u{0.4, -1.3};
  const auto us = lift_point(u);
  const std::vector<Jet> coords{us[0] * us[1], sin(us[0])};
  const Jet f = parse("x1*x2", 2).eval(coords);
  const double d0 = u[1] * std::sin(u[0]) + u[0] * u[1] * std::cos(u[0]);
  CHECK(f.d(0) == doctest::Approx(d0));
  CHECK(f.d(1) == doctest::Approx(u[0] * std::sin(u[0])));
}
