// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Oracles are written out by hand here, independent of the library
// code paths they check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dmsscale/codegen.hpp"
#include "dmsscale/dms_model.hpp"
#include "dmsscale/errors.hpp"
#include "dmsscale/expr.hpp"
#include "dmsscale/inversion.hpp"
#include "dmsscale/lut.hpp"
#include "dmsscale/scaling.hpp"
#include "dmsscale/simulate.hpp"
#include "support.hpp"

using namespace dmsscale;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) {
      passed = false;
      detail = what;
    }
  }
};

std::string num(double v) { return format_number(v, 17); }

const double kCaseCoefficient = 15.0 * std::sqrt(5.0 / 1023.0);

Outcome closed_form() {
  Outcome o;
  const ScalingFunction sf = synthesize(test::case_study());
  o.require(sf.monomial.has_value(), "no closed form");
  if (!o.passed) return o;
  o.require(sf.monomial->exponent == Rational(1, 2), "exponent is not 1/2");
  const double c = sf.monomial->coefficient;
  o.require(std::fabs(c - kCaseCoefficient) <= 1e-12, "coefficient " + num(c) + " vs " + num(kCaseCoefficient));
  o.require(format_number(c, 12) == "1.04866903495", "prints as " + format_number(c, 12));
  o.require(sf.describe() == "1.04866903495*sqrt(dN)", "describe: " + sf.describe());
  o.detail = o.passed ? "coefficient " + format_number(c, 12) : o.detail;
  return o;
}

Outcome table_rows() {
  Outcome o;
  const ScalingFunction sf = synthesize(test::case_study());
  const std::vector<std::pair<int, double>> rows{{205, 0.66},  {206, 1.24},  {207, 1.62},  {1020, 29.94},
                                                 {1021, 29.96}, {1022, 29.98}, {1023, 30.00}};
  for (const auto& [code, want] : rows) {
    const double got = round_display(eval_scaling(sf, code), 2);
    o.require(got == want, "N=" + std::to_string(code) + " rounds to " + num(got));
  }
  if (o.passed) o.detail = "7 rows";
  return o;
}

Outcome derived_constants() {
  Outcome o;
  const AdcBounds b = adc_bounds(AdcSpec(10, Range(4.0, 20.0)));
  o.require(b.n_min == 204.6, "N_min " + num(b.n_min));
  o.require(b.n_max == 1023.0, "N_max " + num(b.n_max));
  o.require(b.delta_n_max == 818.4, "dN_max " + num(b.delta_n_max));
  o.require(delta_max(Range(4.0, 20.0)) == 16.0, "di_max");
  o.require(delta_max(Range(0.0, 30.0)) == 30.0, "dQ_max");
  if (o.passed) o.detail = "(204.6, 1023, 818.4), 16 mA, 30 m3/h";
  return o;
}

Outcome inversion_equivalence() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> coef(0.05, 50.0);
  std::uniform_real_distribution<double> width(0.5, 2000.0);
  std::uniform_int_distribution<int> num_dist(1, 7);
  std::uniform_int_distribution<int> den_dist(1, 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  struct Law {
    Expression body;
    std::string variable;
    Interval domain;
  };
  std::vector<Law> laws{{test::case_study().sensor.body, "dQ", {0.0, 30.0}}};
  while (laws.size() < 11) {
    const double a = coef(rng);
    const Rational k(num_dist(rng), den_dist(rng));
    laws.push_back({Expression::multiply(Expression::number(a), Expression::power(Expression::variable("x"), k)),
                    "x", Interval{0.0, width(rng)}});
  }
  double worst = 0.0;
  for (const Law& law : laws) {
    const InverseResult closed = invert(law.body, law.variable, law.domain, "y", true);
    const InverseResult numeric = invert(law.body, law.variable, law.domain, "y", false);
    o.require(closed.is_closed_form(), "no closed form for " + to_string(law.body));
    o.require(!numeric.is_closed_form(), "bisection path not taken");
    for (int t = 0; t < 100; ++t) {
      const double y = unit(rng) * closed.target_domain.hi;
      const double a = closed(y);
      const double n = numeric(y);
      const double err = std::fabs(a - n) / std::max(1.0, std::fabs(a));
      worst = std::max(worst, err);
      o.require(err <= 1e-9, to_string(law.body) + " at y=" + num(y) + ": " + num(a) + " vs " + num(n));
    }
  }
  if (o.passed) o.detail = "11 laws x 100 targets, worst " + format_number(worst, 3);
  return o;
}

Outcome identity() {
  Outcome o;
  const DmsSpec spec = test::case_study();
  const ScalingFunction sf = synthesize(spec);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 30.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double dx = dist(rng);
    // h(f(dx)) by hand: 818.4/16 * (16 dx^2 / 900)
    const double dn = std::min(818.4 / 16.0 * (16.0 * dx * dx / 900.0), sf.delta_n_max);
    const double back = sf.q(dn);
    const double err = std::fabs(back - dx) / std::max(std::fabs(dx), 1e-300);
    worst = std::max(worst, dx == 0.0 ? std::fabs(back) : err);
    o.require(dx == 0.0 ? back == 0.0 : err <= 1e-9, "dx=" + num(dx) + " -> " + num(back));
  }
  if (o.passed) o.detail = "1000 points, worst relative " + format_number(worst, 3);
  return o;
}

Outcome lut_structure() {
  Outcome o;
  const DmsSpec spec = test::case_study();
  const ScalingFunction sf = synthesize(spec);
  const LookupTable table = build_lut(sf, adc_bounds(spec.adc));
  o.require(table.size() == 819, "size " + std::to_string(table.size()));
  o.require(table.first_code() == 205 && table.last_code() == 1023,
            "window " + std::to_string(table.first_code()) + ".." + std::to_string(table.last_code()));
  const auto v = table.values();
  for (std::size_t k = 1; k < v.size(); ++k) {
    o.require(v[k] > v[k - 1], "not increasing at code " + std::to_string(205 + k));
  }

  const ChainReport r = roundtrip(spec, sf, 1000);
  for (const ChainSample& s : r.samples) {
    if (s.clamped || s.code < 206 || s.code > 1022) continue;
    const double step = std::max(lookup(table, s.code + 1) - lookup(table, s.code),
                                 lookup(table, s.code) - lookup(table, s.code - 1));
    o.require(std::fabs(s.error) <= step, "step bound broken at x=" + num(s.x));
  }

  // brute-force sweep: N = 204.6 + 818.4 (x/30)^2, nearest code in [205, 1023]
  double oracle = 0.0;
  double oracle_x = 0.0;
  for (int j = 0; j < 1000; ++j) {
    const double x = j == 999 ? 30.0 : 30.0 * j / 999.0;
    const double code = std::clamp(std::round(204.6 + 818.4 * (x / 30.0) * (x / 30.0)), 205.0, 1023.0);
    const double e = std::fabs(kCaseCoefficient * std::sqrt(code - 204.6) - x);
    if (e > oracle) {
      oracle = e;
      oracle_x = x;
    }
  }
  o.require(std::fabs(r.max_abs_error - oracle) <= 1e-9,
            "sweep max " + num(r.max_abs_error) + " vs oracle " + num(oracle));
  o.require(r.max_abs_error <= 0.67, "max error " + num(r.max_abs_error));
  o.require(oracle_x < 1.0 && r.samples[r.worst_index].x == oracle_x, "worst sample not at the live-zero edge");
  if (o.passed) {
    o.detail = "819 entries, max |error| " + format_number(r.max_abs_error, 6) + " at x=" +
               format_number(r.samples[r.worst_index].x, 6);
  }
  return o;
}

Outcome codegen_consistency() {
  Outcome o;
  const DmsSpec spec = test::case_study();
  const ScalingFunction sf = synthesize(spec);
  const LookupTable table = build_lut(sf, adc_bounds(spec.adc));
  const std::string a = emit(spec, sf, table);
  const std::string b = emit(spec, synthesize(spec), build_lut(sf, adc_bounds(spec.adc)));
  o.require(a == b, "emissions differ");
  o.require(a.find("1.04866903495") != std::string::npos, "coefficient missing");
  o.require(a.find("for (i = 205; i <= 1023; i++)") != std::string::npos, "loop bounds missing");

  const std::string lead = "Q_star[i] = ";
  const auto start = a.find(lead);
  o.require(start != std::string::npos, "init formula missing");
  if (!o.passed) return o;
  const auto end = a.find(";\n", start);
  const Expression formula = parse(a.substr(start + lead.size(), end - start - lead.size()));
  double worst = 0.0;
  for (std::int64_t n = 205; n <= 1023; ++n) {
    const double err = std::fabs(evaluate_at(formula, "i", static_cast<double>(n)) - lookup(table, n));
    worst = std::max(worst, err);
  }
  o.require(worst <= 1e-12, "formula vs table " + num(worst));
  if (o.passed) o.detail = "byte-identical, formula vs table max " + format_number(worst, 3);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_seconds;  // 0: no runtime bound
  };
  const std::vector<Criterion> criteria{
      {"closed-form reproduction", closed_form, 1.0},
      {"reference table rows", table_rows, 1.0},
      {"derived ADC constants", derived_constants, 1.0},
      {"analytic/numeric inversion equivalence", inversion_equivalence, 0.0},
      {"delta-space identity", identity, 0.0},
      {"lookup table structure and sweep error", lut_structure, 0.0},
      {"codegen determinism and self-consistency", codegen_consistency, 0.0},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.passed = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_seconds > 0.0 && seconds >= c.budget_seconds) {
      out.passed = false;
      out.detail += " (took " + format_number(seconds, 3) + " s)";
    }
    std::printf("%s  %-42s %s [%.3f s]\n", out.passed ? "PASS" : "FAIL", c.name, out.detail.c_str(), seconds);
    failures += out.passed ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
