#include "dmsscale/scaling.hpp"

#include <cmath>

#include "dmsscale/errors.hpp"

namespace dmsscale {

namespace {

constexpr double kCompositionTolerance = 1e-9;

double power_of(double a, Rational k) {
  if (k == Rational(1)) return a;
  if (k == Rational(1, 2)) return std::sqrt(a);
  return std::pow(a, k.to_double());
}

void check_endpoint(const char* what, double got, double expected) {
  if (std::fabs(got - expected) > kCompositionTolerance * std::max(1.0, std::fabs(expected))) {
    throw Error(ErrorCategory::Validation, std::string("composition domain mismatch: ") + what + " = " +
                                               format_number(got) + ", expected " + format_number(expected));
  }
}

}  // namespace

double ScalingStage::operator()(double v) const {
  if (const auto* inv = std::get_if<InverseResult>(&function)) {
    return (*inv)(v);
  }
  return std::get<Characteristic>(function)(v);
}

std::string ScalingStage::describe() const {
  if (const auto* inv = std::get_if<InverseResult>(&function)) {
    return label + ": " + inv->describe();
  }
  PrintOptions opt;
  opt.significant_digits = 12;
  return label + ": " + to_string(std::get<Characteristic>(function).body, opt);
}

double ScalingFunction::q(double dn) const {
  if (!(dn >= 0.0 && dn <= delta_n_max)) {
    throw Error(ErrorCategory::Range, "dN=" + format_number(dn) + " outside [0, " + format_number(delta_n_max) + "]");
  }
  if (closed_form) {
    return evaluate_at(*closed_form, kDeltaCodeVariable, dn);
  }
  double v = dn;
  for (const auto& stage : stages) {
    v = stage(v);
  }
  return v;
}

std::string ScalingFunction::describe() const {
  if (closed_form) {
    PrintOptions opt;
    opt.significant_digits = 12;
    return to_string(*closed_form, opt);
  }
  std::string out = "numeric composite g(finv(hinv(dN)))";
  for (const auto& stage : stages) {
    out += "; " + stage.describe();
  }
  return out;
}

AbsoluteForm to_absolute(const ScalingFunction& sf, const DmsSpec& spec) {
  const AdcBounds b = adc_bounds(spec.adc);
  AbsoluteForm form;
  form.convention = spec.convention;
  form.window = Interval{b.n_min, b.n_max};
  form.x_min = spec.sensor_range.min();
  form.x_max = spec.sensor_range.max();
  if (sf.closed_form) {
    const Expression code = Expression::variable(kCodeVariable);
    if (spec.convention == DeltaConvention::FromMin) {
      const Expression dn = difference(code, Expression::number(b.n_min));
      form.closed_form = sum(Expression::number(form.x_min), substitute(*sf.closed_form, kDeltaCodeVariable, dn));
    } else {
      const Expression dn = difference(Expression::number(b.n_max), code);
      form.closed_form =
          difference(Expression::number(form.x_max), substitute(*sf.closed_form, kDeltaCodeVariable, dn));
    }
  }
  return form;
}

double eval_scaling(const ScalingFunction& sf, double code) {
  const AbsoluteForm& a = sf.absolute;
  if (!(code >= a.window.lo && code <= a.window.hi)) {
    throw Error(ErrorCategory::Range, "code " + format_number(code) + " outside window [" +
                                          format_number(a.window.lo) + ", " + format_number(a.window.hi) + "]");
  }
  if (a.closed_form) {
    return evaluate_at(*a.closed_form, kCodeVariable, code);
  }
  if (a.convention == DeltaConvention::FromMin) {
    return a.x_min + sf.q(code - a.window.lo);
  }
  return a.x_max - sf.q(a.window.hi - code);
}

ScalingFunction synthesize(const DmsSpec& spec, const SynthesisOptions& options) {
  const AdcBounds b = adc_bounds(spec.adc);
  const double dx_max = delta_max(spec.sensor_range);
  const double di_max = delta_max(spec.adc.current());

  InverseResult h_inv = invert(spec.converter.body, spec.converter.variable, Interval{0.0, di_max},
                               kDeltaCodeVariable, options.allow_analytic);
  InverseResult f_inv = invert(spec.sensor.body, spec.sensor.variable, Interval{0.0, dx_max},
                               spec.converter.variable, options.allow_analytic);

  check_endpoint("hinv(dNmax)", h_inv(b.delta_n_max), di_max);
  check_endpoint("finv(dimax)", f_inv(di_max), dx_max);

  ScalingFunction sf;
  sf.delta_n_max = b.delta_n_max;
  sf.delta_x_max = dx_max;
  sf.unit = spec.unit;

  if (options.allow_analytic && h_inv.is_closed_form() && f_inv.is_closed_form()) {
    const auto m1 = as_monomial(std::get<Expression>(h_inv.form), kDeltaCodeVariable);
    const auto m2 = as_monomial(std::get<Expression>(f_inv.form), spec.converter.variable);
    const auto m3 = as_monomial(spec.system.body, spec.system.variable);
    if (m1 && m2 && m3 && m3->coefficient > 0.0 && m3->exponent.num > 0) {
      // a3 * (a2 * (a1 * y^k1)^k2)^k3
      const double inner = m2->coefficient * power_of(m1->coefficient, m2->exponent);
      const double coef = m3->coefficient * power_of(inner, m3->exponent);
      const Monomial q{coef, m1->exponent * m2->exponent * m3->exponent};
      sf.monomial = q;
      sf.closed_form = monomial_expression(q, kDeltaCodeVariable);
    }
  }

  sf.stages.push_back({"hinv", std::move(h_inv)});
  sf.stages.push_back({"finv", std::move(f_inv)});
  sf.stages.push_back({"g", spec.system});
  sf.absolute = to_absolute(sf, spec);
  return sf;
}

}  // namespace dmsscale
