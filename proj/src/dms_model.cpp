#include "dmsscale/dms_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "dmsscale/errors.hpp"
#include "dmsscale/inversion.hpp"

namespace dmsscale {

Range::Range(double min, double max) : min_(min), max_(max) {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw Error(ErrorCategory::Range,
                "empty range [" + format_number(min) + ", " + format_number(max) + "]: min must be below max");
  }
}

double delta(double value, const Range& range, DeltaConvention convention) {
  if (!range.contains(value)) {
    throw Error(ErrorCategory::Range, "value " + format_number(value) + " outside [" + format_number(range.min()) +
                                          ", " + format_number(range.max()) + "]");
  }
  return convention == DeltaConvention::FromMax ? range.max() - value : value - range.min();
}

double from_delta(double d, const Range& range, DeltaConvention convention) {
  return convention == DeltaConvention::FromMax ? range.max() - d : range.min() + d;
}

double delta_max(const Range& range) { return range.max() - range.min(); }

AdcSpec::AdcSpec(int resolution_bits, Range current) : bits_(resolution_bits), current_(current) {
  if (bits_ < 1 || bits_ > 32) {
    throw Error(ErrorCategory::Range, "ADC resolution must be 1..32 bits, got " + std::to_string(bits_));
  }
  if (current_.min() < 0.0) {
    throw Error(ErrorCategory::Range, "ADC input current minimum must be non-negative");
  }
}

AdcBounds adc_bounds(const AdcSpec& adc) {
  AdcBounds b;
  b.n_max = std::ldexp(1.0, adc.resolution_bits()) - 1.0;
  b.n_min = b.n_max * adc.current().min() / adc.current().max();
  b.delta_n_max = b.n_max - b.n_min;
  return b;
}

Bindings chain_constants(const Range& sensor_range, const AdcSpec& adc, std::string_view symbol) {
  const AdcBounds b = adc_bounds(adc);
  Bindings c{
      {"n", static_cast<double>(adc.resolution_bits())},
      {"imin", adc.current().min()},
      {"imax", adc.current().max()},
      {"dimax", delta_max(adc.current())},
      {"Nmin", b.n_min},
      {"Nmax", b.n_max},
      {"dNmax", b.delta_n_max},
  };
  const auto add_measurand = [&](const std::string& s) {
    c[s + "min"] = sensor_range.min();
    c[s + "max"] = sensor_range.max();
    c["d" + s + "max"] = delta_max(sensor_range);
    c["d" + s + "maxstar"] = delta_max(sensor_range);
  };
  add_measurand("x");
  if (!symbol.empty() && symbol != "x") {
    add_measurand(std::string(symbol));
  }
  return c;
}

bool ValidationReport::ok() const noexcept { return first_failure() == nullptr; }

const ValidationCheck* ValidationReport::first_failure() const noexcept {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

const ValidationCheck* ValidationReport::find(std::string_view name) const noexcept {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& c : checks) {
    out += c.passed ? "PASS " : "FAIL ";
    out += c.name;
    out += " residual=" + format_number(c.residual, 6);
    if (!c.detail.empty()) {
      out += " (" + c.detail + ")";
    }
    out += '\n';
  }
  return out;
}

namespace {

ValidationCheck guarded(std::string name, const std::function<ValidationCheck()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    return {std::move(name), false, std::numeric_limits<double>::infinity(), e.what()};
  }
}

ValidationCheck zero_check(const std::string& label, const Characteristic& c) {
  const std::string name = label + "(0)=0";
  return guarded(name, [&] {
    const double r = std::fabs(c(0.0));
    return ValidationCheck{name, r <= kZeroTolerance, r, {}};
  });
}

ValidationCheck endpoint_check(const std::string& label, const Characteristic& c, double d_max, double expected) {
  const std::string name = label + "(dmax)=target";
  return guarded(name, [&] {
    const double got = c(d_max);
    const double r = std::fabs(got - expected) / std::max(1.0, std::fabs(expected));
    return ValidationCheck{name, r <= kEndpointTolerance, r,
                           label + "(" + format_number(d_max) + ")=" + format_number(got) + ", expected " +
                               format_number(expected)};
  });
}

ValidationCheck monotone_check(const std::string& label, const Characteristic& c, double d_max) {
  const std::string name = label + " increasing";
  return guarded(name, [&] {
    const MonotoneResult m = check_monotone(c.body, c.variable, Interval{0.0, d_max});
    switch (m.direction) {
      case Direction::Increasing:
        return ValidationCheck{name, true, 0.0, {}};
      case Direction::Decreasing:
        return ValidationCheck{name, false, 1.0, "decreasing on [0, " + format_number(d_max) + "]"};
      case Direction::NonMonotone:
        break;
    }
    return ValidationCheck{name, false, 1.0,
                           "not monotone, witness " + c.variable + "=" + format_number(m.witness->first, 10) +
                               " .. " + format_number(m.witness->second, 10)};
  });
}

}  // namespace

ValidationReport validate(const DmsSpec& spec) {
  const AdcBounds b = adc_bounds(spec.adc);
  // An empty code window aborts instead of being reported.
  static_cast<void>(Range(b.n_min, b.n_max));

  const double dx_max = delta_max(spec.sensor_range);
  const double di_max = delta_max(spec.adc.current());

  ValidationReport report;
  report.checks.push_back(zero_check("f", spec.sensor));
  report.checks.push_back(zero_check("h", spec.converter));
  report.checks.push_back(zero_check("g", spec.system));
  report.checks.push_back(endpoint_check("f", spec.sensor, dx_max, di_max));
  report.checks.push_back(endpoint_check("h", spec.converter, di_max, b.delta_n_max));
  report.checks.push_back(endpoint_check("g", spec.system, dx_max, dx_max));
  report.checks.push_back(monotone_check("f", spec.sensor, dx_max));
  report.checks.push_back(monotone_check("h", spec.converter, di_max));
  return report;
}

}  // namespace dmsscale
