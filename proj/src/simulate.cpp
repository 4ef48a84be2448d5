#include "dmsscale/simulate.hpp"

#include <cmath>

#include "dmsscale/errors.hpp"

namespace dmsscale {

namespace {

// Exact codes within this distance of an integer are treated as that
// integer before truncation, so floating-point noise at 1022.99999... does
// not lose a whole code.
constexpr double kCodeSnap = 1e-9;

std::int64_t quantize(double exact, Quantizer quantizer) {
  if (quantizer == Quantizer::Nearest) {
    return static_cast<std::int64_t>(std::round(exact));
  }
  return static_cast<std::int64_t>(std::floor(exact + kCodeSnap));
}

ChainSample chain(double x, const DmsSpec& spec, const AdcBounds& bounds, std::int64_t first_code,
                  Quantizer quantizer) {
  const Range& current_range = spec.adc.current();
  ChainSample s;
  s.x = x;
  const double dx = delta(x, spec.sensor_range, spec.convention);
  const double di = spec.sensor(dx);
  const double dn = spec.converter(di);
  s.current = from_delta(di, current_range, spec.convention);
  s.exact_code = spec.convention == DeltaConvention::FromMin ? bounds.n_min + dn : bounds.n_max - dn;

  std::int64_t code = quantize(s.exact_code, quantizer);
  const auto last = static_cast<std::int64_t>(bounds.n_max);
  if (code < first_code) {
    code = first_code;
    s.clamped = true;
  } else if (code > last) {
    code = last;
    s.clamped = true;
  }
  s.code = code;
  return s;
}

ChainReport score(std::vector<ChainSample> samples) {
  ChainReport report;
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double e = std::fabs(samples[k].error);
    sum_sq += samples[k].error * samples[k].error;
    if (e > report.max_abs_error) {
      report.max_abs_error = e;
      report.worst_index = k;
    }
  }
  if (!samples.empty()) {
    report.rms_error = std::sqrt(sum_sq / static_cast<double>(samples.size()));
  }
  report.samples = std::move(samples);
  return report;
}

}  // namespace

ChainSample forward(double x, const DmsSpec& spec, Quantizer quantizer) {
  const AdcBounds bounds = adc_bounds(spec.adc);
  return chain(x, spec, bounds, first_window_code(bounds), quantizer);
}

ChainReport simulate_values(const DmsSpec& spec, const ScalingFunction& sf, std::span<const double> xs,
                            Quantizer quantizer) {
  const AdcBounds bounds = adc_bounds(spec.adc);
  const LookupTable table = build_lut(sf, bounds);
  std::vector<ChainSample> samples;
  samples.reserve(xs.size());
  for (const double x : xs) {
    ChainSample s = chain(x, spec, bounds, table.first_code(), quantizer);
    s.x_star = lookup(table, s.code);
    s.error = s.x_star - s.x;
    samples.push_back(s);
  }
  return score(std::move(samples));
}

ChainReport roundtrip(const DmsSpec& spec, const ScalingFunction& sf, std::size_t sweep, Quantizer quantizer) {
  if (sweep < 2) {
    throw Error(ErrorCategory::Range, "sweep needs at least 2 samples");
  }
  const double lo = spec.sensor_range.min();
  const double hi = spec.sensor_range.max();
  std::vector<double> xs(sweep);
  for (std::size_t j = 0; j < sweep; ++j) {
    xs[j] = j + 1 == sweep ? hi : lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(sweep - 1);
  }
  return simulate_values(spec, sf, xs, quantizer);
}

std::string format_summary(const ChainReport& report, const std::string& unit) {
  std::size_t clamped = 0;
  for (const auto& s : report.samples) {
    clamped += s.clamped ? 1 : 0;
  }
  std::string out;
  out += "samples=" + std::to_string(report.samples.size()) + "\n";
  out += "clamped=" + std::to_string(clamped) + "\n";
  out += "max_abs_error=" + format_number(report.max_abs_error, 10) + (unit.empty() ? "" : " " + unit) + "\n";
  out += "rms_error=" + format_number(report.rms_error, 10) + (unit.empty() ? "" : " " + unit) + "\n";
  if (!report.samples.empty()) {
    const ChainSample& w = report.samples[report.worst_index];
    out += "worst: x=" + format_number(w.x, 10) + " code=" + std::to_string(w.code) +
           " x_star=" + format_number(w.x_star, 10) + "\n";
  }
  return out;
}

std::string format_samples_csv(const ChainReport& report) {
  std::string out = "x,i,exact_code,code,x_star,error\n";
  for (const auto& s : report.samples) {
    out += format_number(s.x, 10) + ',' + format_number(s.current, 10) + ',' + format_number(s.exact_code, 10) +
           ',' + std::to_string(s.code) + ',' + format_number(s.x_star, 10) + ',' + format_number(s.error, 10) +
           '\n';
  }
  return out;
}

}  // namespace dmsscale
