#pragma once

// Test fixtures: specs built straight from characteristic text, independent
// of the config module.

#include <string>

#include "dmsscale/dms_model.hpp"
#include "dmsscale/expr.hpp"

namespace dmsscale::test {

struct SpecText {
  std::string sensor = "dimax * dQ^2 / dQmax^2";
  std::string converter = "dNmax * di / dimax";
  std::string system = "dQmaxstar / dQmax * dQ";
  double x_min = 0.0;
  double x_max = 30.0;
  int bits = 10;
  double i_min = 4.0;
  double i_max = 20.0;
  DeltaConvention convention = DeltaConvention::FromMin;
};

inline Characteristic characteristic(const std::string& text, const Bindings& constants,
                                     const std::string& default_variable) {
  ParseOptions options;
  for (const auto& [name, value] : constants) {
    options.constants.insert(name);
  }
  const Expression e = parse(text, options);
  const auto vars = variables(e);
  return Characteristic{bind_constants(e, constants), vars.empty() ? default_variable : *vars.begin()};
}

inline DmsSpec make_spec(const SpecText& t = {}) {
  DmsSpec s;
  s.sensor_range = Range(t.x_min, t.x_max);
  s.adc = AdcSpec(t.bits, Range(t.i_min, t.i_max));
  s.symbol = "Q";
  s.unit = "m3/h";
  s.convention = t.convention;
  const Bindings c = chain_constants(s.sensor_range, s.adc, s.symbol);
  s.sensor = characteristic(t.sensor, c, "dQ");
  s.converter = characteristic(t.converter, c, "di");
  s.system = characteristic(t.system, c, "dQ");
  return s;
}

/// The flow-measurement case study: square-law sensor on 4-20 mA, 10 bits.
inline DmsSpec case_study(DeltaConvention convention = DeltaConvention::FromMin) {
  SpecText t;
  t.convention = convention;
  return make_spec(t);
}

/// Every block linear.
inline DmsSpec all_linear() {
  SpecText t;
  t.sensor = "dimax / dQmax * dQ";
  return make_spec(t);
}

}  // namespace dmsscale::test
