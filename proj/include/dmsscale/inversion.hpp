#pragma once

// Inverse characteristics: closed form for positive monomials a*d^k,
// bisection for everything else, and a sampling monotonicity certificate.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "dmsscale/expr.hpp"

namespace dmsscale {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  bool contains(double v) const noexcept { return v >= lo && v <= hi; }
};

enum class Direction { Increasing, Decreasing, NonMonotone };

struct MonotoneResult {
  Direction direction = Direction::NonMonotone;
  /// Adjacent sample pair where monotonicity breaks (NonMonotone only).
  std::optional<std::pair<double, double>> witness;
};

inline constexpr int kMonotoneSamples = 1024;

/// Samples 1024 uniform points of `domain` and the sign of the symbolic
/// derivative at each.
MonotoneResult check_monotone(const Expression& expr, std::string_view variable, Interval domain);

/// coefficient * d^exponent
struct Monomial {
  double coefficient = 1.0;
  Rational exponent{1};

  double operator()(double d) const;
};

/// Normalizes a constant-free expression to a*d^k, if it has that shape.
std::optional<Monomial> as_monomial(const Expression& expr, std::string_view variable);

Expression monomial_expression(const Monomial& m, std::string_view variable);

/// Closed-form inverse of a*d^k (a > 0, k > 0), written in `output_variable`.
/// Empty for every other shape or for domains reaching below zero.
std::optional<Expression> invert_analytic(const Expression& expr, std::string_view variable, Interval domain,
                                          std::string_view output_variable = "y");

struct BisectionOptions {
  double tolerance = 1e-9;    // residual bound, relative to max(1, |target|)
  double x_tolerance = 0.0;   // stop once the bracket is this narrow; 0 runs to adjacent doubles
  int max_iterations = 200;
};

struct BisectionResult {
  double root = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Solves f(x) == target on a bracket where f is monotone. Throws a Range
/// error when target is not reachable and a Validation error when f is
/// caught violating monotonicity mid-search.
BisectionResult bisect(const std::function<double(double)>& f, Interval bracket, double target,
                       const BisectionOptions& options = {});

double invert_numeric(const Expression& expr, std::string_view variable, Interval domain, double target,
                      double tolerance = 1e-9);

/// Bracketed-root descriptor: evaluating it runs bisection on `forward`.
struct NumericInverse {
  Expression forward;
  std::string variable;
  Interval domain;
  double tolerance = 1e-14;
};

struct InverseResult {
  std::variant<Expression, NumericInverse> form;
  std::string input_variable;  // variable of the inverse, i.e. the forward output
  Interval source_domain;      // forward domain, inverse codomain
  Interval target_domain;      // forward image, inverse domain

  bool is_closed_form() const noexcept { return std::holds_alternative<Expression>(form); }
  double operator()(double y) const;
  std::string describe() const;
};

/// Inverse of an increasing characteristic on `domain`. Prefers the closed
/// form unless `allow_analytic` is false. Decreasing or non-monotone
/// characteristics are rejected with a Validation error naming the witness.
InverseResult invert(const Expression& expr, std::string_view variable, Interval domain,
                     std::string_view output_variable, bool allow_analytic = true);

}  // namespace dmsscale
