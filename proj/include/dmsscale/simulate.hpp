#pragma once

// Forward-chain simulation x -> i -> N (quantized) -> x* and the resulting
// reconstruction-error statistics.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dmsscale/dms_model.hpp"
#include "dmsscale/lut.hpp"
#include "dmsscale/scaling.hpp"

namespace dmsscale {

enum class Quantizer { Nearest, Floor };

struct ChainSample {
  double x = 0.0;           // true measurand
  double current = 0.0;     // exact loop current, mA
  double exact_code = 0.0;  // unquantized ADC code
  std::int64_t code = 0;    // quantized and clamped code
  bool clamped = false;
  double x_star = 0.0;      // reconstructed value
  double error = 0.0;       // x_star - x
};

struct ChainReport {
  std::vector<ChainSample> samples;
  double max_abs_error = 0.0;
  double rms_error = 0.0;
  std::size_t worst_index = 0;
};

/// Chains x through f and h and quantizes. Codes are clamped to
/// [first window code, N_max] with `clamped` set. Reconstruction fields are
/// left zero.
ChainSample forward(double x, const DmsSpec& spec, Quantizer quantizer = Quantizer::Nearest);

/// Uniform sweep of `sweep` points over the sensor range (sweep >= 2), each
/// forward-chained, looked up in the table built from `sf`, and scored.
ChainReport roundtrip(const DmsSpec& spec, const ScalingFunction& sf, std::size_t sweep,
                      Quantizer quantizer = Quantizer::Nearest);

/// Same as roundtrip for a caller-supplied (e.g. pre-distorted) stream of x.
ChainReport simulate_values(const DmsSpec& spec, const ScalingFunction& sf, std::span<const double> xs,
                            Quantizer quantizer = Quantizer::Nearest);

std::string format_summary(const ChainReport& report, const std::string& unit);

/// `x,i,exact_code,code,x_star,error` header plus one row per sample.
std::string format_samples_csv(const ChainReport& report);

}  // namespace dmsscale
