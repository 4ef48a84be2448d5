#include "dmsscale/cli.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include <CLI11.hpp>

#include "dmsscale/codegen.hpp"
#include "dmsscale/config.hpp"
#include "dmsscale/errors.hpp"
#include "dmsscale/lut.hpp"
#include "dmsscale/scaling.hpp"
#include "dmsscale/simulate.hpp"

namespace dmsscale {

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::string format = "csv";
  std::string quantizer;
  std::size_t samples = 1000;
};

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Syntax:
    case ErrorCategory::Config:
      return kExitConfig;
    case ErrorCategory::Validation:
      return kExitValidation;
    case ErrorCategory::Io:
      return kExitIo;
    case ErrorCategory::Domain:
    case ErrorCategory::Range:
      return kExitDomain;
    case ErrorCategory::Codegen:
      return kExitCodegen;
  }
  return kExitDomain;
}

std::string one_line(std::string text) {
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

void deliver(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

struct Pipeline {
  ConfigDocument doc;
  DmsSpec spec;
  AdcBounds bounds;
  ScalingFunction sf;
};

Pipeline prepare(const Flags& flags) {
  Pipeline p;
  p.doc = load_config(flags.config);
  p.spec = to_spec(p.doc);
  p.bounds = adc_bounds(p.spec.adc);
  const ValidationReport report = validate(p.spec);
  if (const ValidationCheck* failure = report.first_failure()) {
    std::string message = failure->name;
    if (!failure->detail.empty()) {
      message += ": " + failure->detail;
    }
    throw Error(ErrorCategory::Validation, message);
  }
  p.sf = synthesize(p.spec);
  return p;
}

std::string derive_text(const Pipeline& p) {
  PrintOptions display;
  display.significant_digits = 12;
  std::string text;
  text += "q(dN) = " + p.sf.describe() + "\n";
  if (p.sf.absolute.closed_form) {
    text += "Q*(N) = " + to_string(*p.sf.absolute.closed_form, display) + "\n";
  }
  text += "Nmin=" + format_number(p.bounds.n_min) + " Nmax=" + format_number(p.bounds.n_max) +
          " dNmax=" + format_number(p.bounds.delta_n_max) + "\n";
  text += "window=" + std::to_string(first_window_code(p.bounds)) + ".." +
          format_number(p.bounds.n_max) + "\n";
  text += "convention=" + std::string(convention_name(p.spec.convention)) + "\n";
  if (!p.spec.unit.empty()) {
    text += "unit=" + p.spec.unit + "\n";
  }
  return text;
}

void add_common(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config, "configuration file")->required();
  cmd->add_option("--out", flags.out, "output path (stdout when omitted)");
  cmd->add_option("--format", flags.format, "table format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--quantizer", flags.quantizer, "ADC rounding rule")->check(CLI::IsMember({"nearest", "floor"}));
  cmd->add_option("--samples", flags.samples, "simulation sweep size")->check(CLI::Range(2, 100000000));
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scaling-function synthesis for ADC measurement chains", "dmsscale"};
  app.require_subcommand(1);
  Flags flags;
  CLI::App* derive = app.add_subcommand("derive", "print the synthesized scaling function and constants");
  CLI::App* lut = app.add_subcommand("lut", "write the lookup table as CSV or JSON");
  CLI::App* codegen = app.add_subcommand("codegen", "write embedded C source");
  CLI::App* simulate = app.add_subcommand("simulate", "forward-chain sweep and reconstruction error report");
  for (CLI::App* cmd : {derive, lut, codegen, simulate}) {
    add_common(cmd, flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Pipeline p = prepare(flags);
    if (derive->parsed()) {
      deliver(derive_text(p), flags.out, out);
    } else if (lut->parsed()) {
      const LookupTable table = build_lut(p.sf, p.bounds);
      deliver(flags.format == "json" ? format_json(table) : format_csv(table), flags.out, out);
    } else if (codegen->parsed()) {
      const LookupTable table = build_lut(p.sf, p.bounds);
      deliver(emit(p.spec, p.sf, table, codegen_options(p.doc)), flags.out, out);
    } else if (simulate->parsed()) {
      const Quantizer q = flags.quantizer.empty() ? p.doc.options.quantizer : parse_quantizer(flags.quantizer);
      const ChainReport report = roundtrip(p.spec, p.sf, flags.samples, q);
      if (!flags.out.empty()) {
        write_text_file(flags.out, format_samples_csv(report));
      }
      out << format_summary(report, p.spec.unit);
    }
  } catch (const Error& e) {
    err << "error: " << category_name(e.category()) << ": " << one_line(e.what()) << "\n";
    return exit_code(e.category());
  }
  return kExitOk;
}

}  // namespace dmsscale
