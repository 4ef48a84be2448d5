#pragma once

// Measurement-chain model: ranges, delta conventions, ADC-derived constants
// and the complete system description consumed by synthesis.

#include <string>
#include <string_view>
#include <vector>

#include "dmsscale/expr.hpp"

namespace dmsscale {

/// Closed interval [min, max] with min < max.
class Range {
 public:
  Range(double min, double max);

  double min() const noexcept { return min_; }
  double max() const noexcept { return max_; }
  bool contains(double v) const noexcept { return v >= min_ && v <= max_; }

 private:
  double min_;
  double max_;
};

/// FromMax: d = max - value.  FromMin: d = value - min.
enum class DeltaConvention { FromMax, FromMin };

double delta(double value, const Range& range, DeltaConvention convention);
double from_delta(double d, const Range& range, DeltaConvention convention);
double delta_max(const Range& range);

class AdcSpec {
 public:
  /// 1 <= resolution_bits <= 32, current range in mA with min >= 0.
  AdcSpec(int resolution_bits, Range current);

  int resolution_bits() const noexcept { return bits_; }
  const Range& current() const noexcept { return current_; }

 private:
  int bits_;
  Range current_;
};

struct AdcBounds {
  double n_min = 0.0;
  double n_max = 0.0;
  double delta_n_max = 0.0;
};

/// N_max = 2^n - 1, N_min = N_max * i_min / i_max, dN_max = N_max - N_min.
AdcBounds adc_bounds(const AdcSpec& adc);

/// A static characteristic: a constant-free expression in one delta variable.
struct Characteristic {
  Expression body;
  std::string variable;

  double operator()(double d) const { return evaluate_at(body, variable, d); }
};

struct DmsSpec {
  Range sensor_range{0.0, 1.0};  // measurand x, physical units
  Characteristic sensor;         // f: dx -> di
  AdcSpec adc{10, Range{4.0, 20.0}};
  Characteristic converter;      // h: di -> dN
  Characteristic system;         // g: dx -> dx*
  DeltaConvention convention = DeltaConvention::FromMin;
  std::string unit;
  std::string symbol = "x";      // measurand name used for derived constant names
};

/// Named constants available to characteristic text: n, imin, imax, dimax,
/// Nmin, Nmax, dNmax, xmin, xmax, dxmax, dxmaxstar, and the same four x
/// names spelled with `symbol` (e.g. Qmin, dQmax, dQmaxstar).
Bindings chain_constants(const Range& sensor_range, const AdcSpec& adc, std::string_view symbol);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const noexcept;
  const ValidationCheck* first_failure() const noexcept;
  const ValidationCheck* find(std::string_view name) const noexcept;
  std::string summary() const;
};

inline constexpr double kZeroTolerance = 1e-12;
inline constexpr double kEndpointTolerance = 1e-9;

/// Checks zero-at-zero for f, h, g; endpoint mapping for f, h, g; and that
/// f and h are increasing. Failures are reported, not thrown.
ValidationReport validate(const DmsSpec& spec);

}  // namespace dmsscale
