#include <doctest.h>

#include <cmath>
#include <random>

#include "dmsscale/errors.hpp"
#include "dmsscale/expr.hpp"
#include "dmsscale/inversion.hpp"
#include "support.hpp"

using namespace dmsscale;

namespace {

Expression sensor_law() { return test::case_study().sensor.body; }
Expression converter_law() { return test::case_study().converter.body; }

}  // namespace

TEST_CASE("check_monotone classifies direction") {
  CHECK(check_monotone(sensor_law(), "dQ", {0.0, 30.0}).direction == Direction::Increasing);
  CHECK(check_monotone(converter_law(), "di", {0.0, 16.0}).direction == Direction::Increasing);
  CHECK(check_monotone(parse("-3*x + 1"), "x", {0.0, 5.0}).direction == Direction::Decreasing);

  const MonotoneResult flat = check_monotone(parse("7 + 0*x"), "x", {0.0, 1.0});
  CHECK(flat.direction == Direction::NonMonotone);
  CHECK(flat.witness.has_value());

  const MonotoneResult bump = check_monotone(parse("(x - 1)^2"), "x", {0.0, 3.0});
  REQUIRE(bump.direction == Direction::NonMonotone);
  CHECK(std::fabs(bump.witness->first - 1.0) <= 3.0 / (kMonotoneSamples - 1));
}

TEST_CASE("analytic inverse of the linear converter") {
  const auto inv = invert_analytic(converter_law(), "di", {0.0, 16.0}, "dN");
  REQUIRE(inv.has_value());
  const double slope = 16.0 / 818.4;
  for (int k = 0; k <= 100; ++k) {
    const double dn = 818.4 * k / 100.0;
    CHECK(evaluate_at(*inv, "dN", dn) == doctest::Approx(slope * dn).epsilon(1e-13));
  }
  CHECK(evaluate_at(*inv, "dN", 818.4) == doctest::Approx(16.0).epsilon(1e-14));
}

TEST_CASE("analytic inverse of the square-law sensor") {
  const auto inv = invert_analytic(sensor_law(), "dQ", {0.0, 30.0}, "di");
  REQUIRE(inv.has_value());
  CHECK(evaluate_at(*inv, "di", 16.0) == doctest::Approx(30.0).epsilon(1e-14));
  CHECK(evaluate_at(*inv, "di", 4.0) == doctest::Approx(15.0).epsilon(1e-14));
  for (int k = 0; k <= 200; ++k) {
    const double di = 16.0 * k / 200.0;
    CHECK(evaluate_at(*inv, "di", di) == doctest::Approx(7.5 * std::sqrt(di)).epsilon(1e-13));
  }
  // round trip on a grid
  for (int k = 0; k <= 300; ++k) {
    const double dq = 30.0 * k / 300.0;
    const double back = evaluate_at(*inv, "di", evaluate_at(sensor_law(), "dQ", dq));
    CHECK(back == doctest::Approx(dq).epsilon(1e-12));
  }
}

TEST_CASE("identity inverts to identity") {
  const auto inv = invert_analytic(parse("x"), "x", {0.0, 10.0}, "y");
  REQUIRE(inv.has_value());
  CHECK(*inv == Expression::variable("y"));
}

TEST_CASE("invert_analytic declines unsupported shapes") {
  CHECK_FALSE(invert_analytic(parse("x + x^2"), "x", {0.0, 1.0}).has_value());
  CHECK_FALSE(invert_analytic(parse("-2*x"), "x", {0.0, 1.0}).has_value());
  CHECK_FALSE(invert_analytic(parse("x^2"), "x", {-1.0, 1.0}).has_value());
}

TEST_CASE("numeric inverse examples") {
  CHECK(invert_numeric(sensor_law(), "dQ", {0.0, 30.0}, 4.0) == doctest::Approx(15.0).epsilon(1e-9));
  CHECK_THROWS_AS(invert_numeric(sensor_law(), "dQ", {0.0, 30.0}, 17.0), Error);
  const Expression cubic = parse("16*x^3/27000");
  CHECK(invert_numeric(cubic, "x", {0.0, 30.0}, 2.0) == doctest::Approx(15.0).epsilon(1e-9));
  try {
    invert_numeric(sensor_law(), "dQ", {0.0, 30.0}, -1.0);
    FAIL("expected a range error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Range);
  }
}

TEST_CASE("numeric and closed-form inverses agree on random monomials") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coef(0.05, 20.0);
  std::uniform_real_distribution<double> width(0.5, 1000.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Rational exponents[] = {Rational(1), Rational(1, 2), Rational(2), Rational(3), Rational(3, 2),
                                Rational(1, 3), Rational(5, 4)};
  for (int m = 0; m < 10; ++m) {
    const double a = coef(rng);
    const Rational k = exponents[m % 7];
    const Interval domain{0.0, width(rng)};
    const Expression e = Expression::multiply(Expression::number(a),
                                              Expression::power(Expression::variable("x"), k));
    const auto closed = invert_analytic(e, "x", domain, "y");
    REQUIRE(closed.has_value());
    const double y_max = evaluate_at(e, "x", domain.hi);
    for (int t = 0; t < 100; ++t) {
      const double y = unit(rng) * y_max;
      const double analytic = evaluate_at(*closed, "y", y);
      const double numeric = invert_numeric(e, "x", domain, y, 1e-14);
      INFO("a=" << a << " k=" << k.to_double() << " y=" << y);
      CHECK(std::fabs(analytic - numeric) <= 1e-9 * std::max(1.0, std::fabs(analytic)));
    }
  }
}

TEST_CASE("inverse composed with forward is the identity") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Expression laws[] = {sensor_law(), parse("dQ + dQ^3/100"), parse("3*sqrt(dQ) + dQ")};
  for (const Expression& law : laws) {
    const Interval domain{0.0, 30.0};
    const InverseResult inv = invert(law, "dQ", domain, "di");
    for (int t = 0; t < 200; ++t) {
      const double x = unit(rng) * domain.hi;
      const double y = evaluate_at(law, "dQ", x);
      CHECK(inv(y) == doctest::Approx(x).epsilon(1e-9).scale(1.0));
      const double y2 = unit(rng) * inv.target_domain.hi;
      CHECK(evaluate_at(law, "dQ", inv(y2)) == doctest::Approx(y2).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("bisection iteration count is logarithmic in the bracket") {
  const auto f = [](double x) { return x * x * x + x; };
  for (double t : {1e-3, 1e-6, 1e-9, 1e-12}) {
    BisectionOptions opts;
    opts.tolerance = 0.0;
    opts.x_tolerance = t;
    const Interval bracket{0.0, 10.0};
    const BisectionResult r = bisect(f, bracket, 123.456, opts);
    const int bound = static_cast<int>(std::ceil(std::log2(bracket.width() / t))) + 2;
    CHECK(r.iterations <= bound);
    CHECK(std::fabs(f(r.root) - 123.456) <= 400.0 * t);  // |f'| <= 301 on the bracket
  }
}

TEST_CASE("bisection reports monotonicity violations") {
  try {
    invert_numeric(parse("(x - 1)^2"), "x", {0.0, 3.0}, 2.0);
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Validation);
    CHECK(std::string(e.what()).find("monotonicity") != std::string::npos);
  }
}

TEST_CASE("invert rejects non-increasing characteristics") {
  try {
    invert(parse("10 - x"), "x", {0.0, 5.0}, "y");
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Validation);
  }
  try {
    invert(parse("(x - 1)^2"), "x", {0.0, 3.0}, "y");
    FAIL("expected a validation error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Validation);
    CHECK(std::string(e.what()).find("witness") != std::string::npos);
  }
}

TEST_CASE("invert chooses the representation") {
  const InverseResult closed = invert(sensor_law(), "dQ", {0.0, 30.0}, "di");
  CHECK(closed.is_closed_form());
  const InverseResult numeric = invert(sensor_law(), "dQ", {0.0, 30.0}, "di", false);
  CHECK_FALSE(numeric.is_closed_form());
  CHECK(numeric.target_domain.hi == doctest::Approx(16.0));
  for (int k = 0; k <= 64; ++k) {
    const double y = 16.0 * k / 64.0;
    CHECK(numeric(y) == doctest::Approx(closed(y)).epsilon(1e-12).scale(1.0));
  }
}
