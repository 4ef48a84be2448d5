#include "dmsscale/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dmsscale/errors.hpp"

namespace dmsscale {

MonotoneResult check_monotone(const Expression& expr, std::string_view variable, Interval domain) {
  std::vector<double> xs(kMonotoneSamples);
  std::vector<double> ys(kMonotoneSamples);
  const double step = domain.width() / (kMonotoneSamples - 1);
  for (int j = 0; j < kMonotoneSamples; ++j) {
    xs[j] = j == kMonotoneSamples - 1 ? domain.hi : domain.lo + step * j;
    ys[j] = evaluate_at(expr, variable, xs[j]);
  }

  const auto witness = [&](int j) {
    return MonotoneResult{Direction::NonMonotone, std::make_pair(xs[j], xs[j + 1])};
  };

  if (ys[1] == ys[0]) {
    return witness(0);
  }
  const bool increasing = ys[1] > ys[0];
  for (int j = 0; j + 1 < kMonotoneSamples; ++j) {
    if (increasing ? ys[j + 1] <= ys[j] : ys[j + 1] >= ys[j]) {
      return witness(j);
    }
  }

  // The sampled values can hide a dip narrower than the grid; the symbolic
  // derivative catches sign changes at the sample points themselves.
  const Expression slope = differentiate(expr, variable);
  const double scale = std::fabs(ys.back() - ys.front()) / std::max(domain.width(), 1e-300);
  const double eps = 1e-12 * scale;
  for (int j = 0; j < kMonotoneSamples; ++j) {
    const double d = evaluate_at(slope, variable, xs[j]);
    if (!std::isfinite(d)) {
      continue;
    }
    if (increasing ? d < -eps : d > eps) {
      return witness(std::min(j, kMonotoneSamples - 2));
    }
  }
  return {increasing ? Direction::Increasing : Direction::Decreasing, std::nullopt};
}

double Monomial::operator()(double d) const {
  if (exponent == Rational(1)) {
    return coefficient * d;
  }
  if (exponent == Rational(1, 2)) {
    return coefficient * std::sqrt(d);
  }
  return coefficient * std::pow(d, exponent.to_double());
}

namespace {

std::optional<Monomial> monomial_of(const Expression& e, std::string_view v) {
  switch (e.kind()) {
    case NodeKind::Number:
      return Monomial{e.value(), Rational(0)};
    case NodeKind::Constant:
      return std::nullopt;
    case NodeKind::Variable:
      if (e.name() != v) return std::nullopt;
      return Monomial{1.0, Rational(1)};
    case NodeKind::Add:
    case NodeKind::Subtract: {
      const auto a = monomial_of(e.lhs(), v);
      const auto b = monomial_of(e.rhs(), v);
      if (!a || !b) return std::nullopt;
      const double sign = e.kind() == NodeKind::Add ? 1.0 : -1.0;
      if (a->coefficient == 0.0) return Monomial{sign * b->coefficient, b->exponent};
      if (b->coefficient == 0.0) return a;
      if (!(a->exponent == b->exponent)) return std::nullopt;
      return Monomial{a->coefficient + sign * b->coefficient, a->exponent};
    }
    case NodeKind::Multiply: {
      const auto a = monomial_of(e.lhs(), v);
      const auto b = monomial_of(e.rhs(), v);
      if (!a || !b) return std::nullopt;
      return Monomial{a->coefficient * b->coefficient, a->exponent + b->exponent};
    }
    case NodeKind::Divide: {
      const auto a = monomial_of(e.lhs(), v);
      const auto b = monomial_of(e.rhs(), v);
      if (!a || !b || b->coefficient == 0.0) return std::nullopt;
      return Monomial{a->coefficient / b->coefficient, a->exponent - b->exponent};
    }
    case NodeKind::Power: {
      const auto a = monomial_of(e.lhs(), v);
      const Rational r = e.exponent();
      if (!a) return std::nullopt;
      if (!r.is_integer() && a->coefficient < 0.0) return std::nullopt;
      return Monomial{std::pow(a->coefficient, r.to_double()), a->exponent * r};
    }
    case NodeKind::Sqrt: {
      const auto a = monomial_of(e.lhs(), v);
      if (!a || a->coefficient < 0.0) return std::nullopt;
      return Monomial{std::sqrt(a->coefficient), a->exponent * Rational(1, 2)};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Monomial> as_monomial(const Expression& expr, std::string_view variable) {
  try {
    return monomial_of(expr, variable);
  } catch (const Error&) {
    return std::nullopt;  // rational overflow on pathological exponents
  }
}

Expression monomial_expression(const Monomial& m, std::string_view variable) {
  const Expression var = Expression::variable(std::string(variable));
  Expression base;
  if (m.exponent == Rational(1)) {
    base = var;
  } else if (m.exponent == Rational(1, 2)) {
    base = Expression::sqrt(var);
  } else if (m.exponent.num == 0) {
    return Expression::number(m.coefficient);
  } else {
    base = Expression::power(var, m.exponent);
  }
  if (m.coefficient == 1.0) {
    return base;
  }
  return Expression::multiply(Expression::number(m.coefficient), base);
}

namespace {

std::optional<Monomial> inverse_monomial(const Monomial& m) {
  if (!(m.coefficient > 0.0) || m.exponent.num <= 0) {
    return std::nullopt;
  }
  const Rational inv = Rational(1) / m.exponent;
  const double reciprocal = 1.0 / m.coefficient;
  double coef = 0.0;
  if (inv == Rational(1)) {
    coef = reciprocal;
  } else if (inv == Rational(1, 2)) {
    coef = std::sqrt(reciprocal);
  } else if (inv == Rational(2)) {
    coef = reciprocal * reciprocal;
  } else {
    coef = std::pow(reciprocal, inv.to_double());
  }
  if (!std::isfinite(coef) || coef <= 0.0) {
    return std::nullopt;
  }
  return Monomial{coef, inv};
}

}  // namespace

std::optional<Expression> invert_analytic(const Expression& expr, std::string_view variable, Interval domain,
                                          std::string_view output_variable) {
  if (domain.lo < 0.0) {
    return std::nullopt;
  }
  const auto m = as_monomial(expr, variable);
  if (!m) {
    return std::nullopt;
  }
  const auto inv = inverse_monomial(*m);
  if (!inv) {
    return std::nullopt;
  }
  return monomial_expression(*inv, output_variable);
}

BisectionResult bisect(const std::function<double(double)>& f, Interval bracket, double target,
                       const BisectionOptions& options) {
  double lo = bracket.lo;
  double hi = bracket.hi;
  double flo = f(lo);
  double fhi = f(hi);
  const double tol_y = options.tolerance * std::max(1.0, std::fabs(target));
  const double fmin = std::min(flo, fhi);
  const double fmax = std::max(flo, fhi);
  if (!(target >= fmin - tol_y && target <= fmax + tol_y)) {
    throw Error(ErrorCategory::Range, "target " + format_number(target) + " outside reachable interval [" +
                                          format_number(fmin) + ", " + format_number(fmax) + "]");
  }

  BisectionResult best{lo, std::fabs(flo - target), 0};
  if (std::fabs(fhi - target) < best.residual) {
    best = {hi, std::fabs(fhi - target), 0};
  }
  if (best.residual <= tol_y) {
    return best;
  }
  if (flo == fhi) {
    throw Error(ErrorCategory::Validation, "function is flat over the bracket");
  }
  const bool increasing = flo < fhi;

  int iterations = 0;
  while (iterations < options.max_iterations) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) {
      break;
    }
    ++iterations;
    const double fm = f(mid);
    if (!(fm >= std::min(flo, fhi) && fm <= std::max(flo, fhi))) {
      throw Error(ErrorCategory::Validation,
                  "monotonicity violated at x=" + format_number(mid) + " during bisection");
    }
    const double residual = std::fabs(fm - target);
    if (residual < best.residual) {
      best = {mid, residual, iterations};
    }
    if (residual <= tol_y) {
      break;
    }
    if ((fm < target) == increasing) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
    if (hi - lo <= options.x_tolerance) {
      break;
    }
  }
  best.iterations = iterations;
  return best;
}

double invert_numeric(const Expression& expr, std::string_view variable, Interval domain, double target,
                      double tolerance) {
  const auto f = [&](double x) { return evaluate_at(expr, variable, x); };
  BisectionOptions options;
  options.tolerance = tolerance;
  return bisect(f, domain, target, options).root;
}

double InverseResult::operator()(double y) const {
  if (const auto* closed = std::get_if<Expression>(&form)) {
    return evaluate_at(*closed, input_variable, y);
  }
  const auto& num = std::get<NumericInverse>(form);
  return invert_numeric(num.forward, num.variable, num.domain, y, num.tolerance);
}

std::string InverseResult::describe() const {
  if (const auto* closed = std::get_if<Expression>(&form)) {
    PrintOptions opt;
    opt.significant_digits = 12;
    return to_string(*closed, opt);
  }
  const auto& num = std::get<NumericInverse>(form);
  return "bisection of " + to_string(num.forward) + " over " + num.variable + " in [" +
         format_number(num.domain.lo) + ", " + format_number(num.domain.hi) + "]";
}

InverseResult invert(const Expression& expr, std::string_view variable, Interval domain,
                     std::string_view output_variable, bool allow_analytic) {
  const MonotoneResult mono = check_monotone(expr, variable, domain);
  if (mono.direction == Direction::Decreasing) {
    throw Error(ErrorCategory::Validation,
                "characteristic " + to_string(expr) + " is decreasing; only increasing characteristics are invertible");
  }
  if (mono.direction == Direction::NonMonotone) {
    throw Error(ErrorCategory::Validation,
                "characteristic " + to_string(expr) + " is not monotone: witness " + std::string(variable) + "=" +
                    format_number(mono.witness->first) + " .. " + format_number(mono.witness->second));
  }

  InverseResult result{Expression{}, std::string(output_variable), domain,
                       Interval{evaluate_at(expr, variable, domain.lo), evaluate_at(expr, variable, domain.hi)}};
  if (allow_analytic) {
    if (auto closed = invert_analytic(expr, variable, domain, output_variable)) {
      result.form = std::move(*closed);
      return result;
    }
  }
  result.form = NumericInverse{expr, std::string(variable), domain};
  return result;
}

}  // namespace dmsscale
