#pragma once

// Synthesis of the scaling function q = g(f^-1(h^-1(dN))) and its
// absolute-units form Q*(N).

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dmsscale/dms_model.hpp"
#include "dmsscale/expr.hpp"
#include "dmsscale/inversion.hpp"

namespace dmsscale {

inline constexpr const char* kDeltaCodeVariable = "dN";
inline constexpr const char* kCodeVariable = "N";

/// One link of the composite, applied in order h^-1, f^-1, g.
struct ScalingStage {
  std::string label;
  std::variant<InverseResult, Characteristic> function;

  double operator()(double v) const;
  std::string describe() const;
};

struct AbsoluteForm {
  DeltaConvention convention = DeltaConvention::FromMin;
  Interval window;          // [N_min, N_max], N_min kept unrounded
  double x_min = 0.0;
  double x_max = 0.0;
  std::optional<Expression> closed_form;  // Q*(N), when q has one
};

struct ScalingFunction {
  std::vector<ScalingStage> stages;
  std::optional<Expression> closed_form;  // q(dN)
  std::optional<Monomial> monomial;       // q as coefficient * dN^k
  AbsoluteForm absolute;
  double delta_n_max = 0.0;
  double delta_x_max = 0.0;
  std::string unit;

  bool is_closed_form() const noexcept { return closed_form.has_value(); }

  /// Delta form q(dN) on [0, dN_max].
  double q(double dn) const;

  /// Closed form with 12 significant digits, or a composite descriptor.
  std::string describe() const;
};

struct SynthesisOptions {
  bool allow_analytic = true;  // false forces the bisection composite
};

ScalingFunction synthesize(const DmsSpec& spec, const SynthesisOptions& options = {});

/// FromMin: Q*(N) = x_min + q(N - N_min).  FromMax: Q*(N) = x_max - q(N_max - N).
AbsoluteForm to_absolute(const ScalingFunction& sf, const DmsSpec& spec);

/// Q*(N) at full precision. Range error outside [N_min, N_max].
double eval_scaling(const ScalingFunction& sf, double code);

}  // namespace dmsscale
