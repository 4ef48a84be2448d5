#include "dmsscale/codegen.hpp"

#include <array>
#include <cmath>
#include <set>

#include "dmsscale/errors.hpp"

namespace dmsscale {

namespace {

constexpr std::array kCKeywords = {
    "auto",   "break",  "case",    "char",   "const",    "continue", "default",  "do",
    "double", "else",   "enum",    "extern", "float",    "for",      "goto",     "if",
    "int",    "long",   "register", "return", "short",   "signed",   "sizeof",   "static",
    "struct", "switch", "typedef", "union",  "unsigned", "void",     "volatile", "while",
};

// Names the emitted unit defines or uses itself.
constexpr std::array kReservedNames = {
    "setup", "loop", "send_data", "scale_code", "read_adc", "analogInPin", "outputValue",
    "N",     "i",    "code",      "out",        "pin",      "sqrt",        "pow",
    "main",
};

std::string c_literal(double v) {
  std::string s = format_number(v);
  if (s.find_first_of(".eEn") == std::string::npos) {
    s += ".0";
  }
  return s;
}

std::string comment_safe(std::string text) {
  for (std::size_t p = text.find("*/"); p != std::string::npos; p = text.find("*/", p)) {
    text.replace(p, 2, "* /");
  }
  return text;
}

std::string sleep_token(double seconds) {
  const std::string s = format_number(seconds);
  if (s.find_first_of("eE") == std::string::npos) {
    return s + "e6";
  }
  return format_number(seconds * 1e6);
}

void check_options(const CodegenOptions& options) {
  if (!(options.sleep_seconds > 0.0) || !std::isfinite(options.sleep_seconds)) {
    throw Error(ErrorCategory::Codegen, "sleep interval must be positive");
  }
  for (const std::string* name : {&options.array_name, &options.analog_pin}) {
    if (!is_c_identifier(*name)) {
      throw Error(ErrorCategory::Codegen, "'" + *name + "' is not a valid C identifier");
    }
    for (const char* reserved : kReservedNames) {
      if (*name == reserved) {
        throw Error(ErrorCategory::Codegen, "identifier '" + *name + "' collides with a generated name");
      }
    }
  }
  if (options.array_name == options.analog_pin) {
    throw Error(ErrorCategory::Codegen,
                "array symbol and analog pin symbol are both '" + options.array_name + "'");
  }
}

}  // namespace

bool is_c_identifier(const std::string& name) {
  if (name.empty()) return false;
  const auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(name[0])) return false;
  for (const char c : name) {
    if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
  }
  for (const char* kw : kCKeywords) {
    if (name == kw) return false;
  }
  return true;
}

std::string emit(const DmsSpec& spec, const ScalingFunction& sf, const LookupTable& table,
                 const CodegenOptions& options) {
  check_options(options);
  if (spec.adc.resolution_bits() > kMaxCodegenBits) {
    throw Error(ErrorCategory::Codegen, "ADC resolution of " + std::to_string(spec.adc.resolution_bits()) +
                                            " bits is too wide for a literal array");
  }
  if (options.init_mode == InitMode::RuntimeFormula && !sf.absolute.closed_form) {
    throw Error(ErrorCategory::Codegen, "runtime-formula mode needs a closed-form scaling function");
  }

  const std::int64_t slots = std::int64_t{1} << spec.adc.resolution_bits();
  const std::string first = std::to_string(table.first_code());
  const std::string last = std::to_string(table.last_code());
  const std::string& arr = options.array_name;

  PrintOptions display;
  display.significant_digits = 12;

  std::string out;
  out += "/*\n";
  out += comment_safe(" * Scaling module: ADC code -> " + (spec.unit.empty() ? std::string("physical units") : spec.unit)) +
         "\n";
  if (sf.closed_form) {
    out += comment_safe(" * q(dN) = " + to_string(*sf.closed_form, display)) + "\n";
    out += comment_safe(" * Q*(N) = " + to_string(*sf.absolute.closed_form, display)) + "\n";
  } else {
    out += " * q(dN) has no closed form; values are tabulated\n";
  }
  out += " * valid codes: " + first + " .. " + last + "\n";
  out += " */\n";
  out += "#include <math.h>\n\n";
  out += "#ifndef " + options.analog_pin + "\n";
  out += "#define " + options.analog_pin + " 0\n";
  out += "#endif\n\n";

  // Table declaration and init section.
  if (options.init_mode == InitMode::ConstantTable) {
    out += "double " + arr + "[" + std::to_string(slots) + "] = {\n";
    for (std::int64_t code = 0; code < slots; ++code) {
      const bool in_window = table.contains(code);
      const std::string lit = in_window ? c_literal(lookup(table, code)) : std::string("0.0");
      out += (code % 4 == 0) ? "    " : " ";
      out += lit;
      if (code + 1 < slots) out += ',';
      if (code % 4 == 3 || code + 1 == slots) out += '\n';
    }
    out += "}; /* conversion table indexed by ADC code */\n";
  } else {
    out += "double " + arr + "[" + std::to_string(slots) + "]; /* conversion table indexed by ADC code */\n";
  }
  out += "const int analogInPin = " + options.analog_pin + ";\n";
  out += "double outputValue = 0;\n";
  out += "int N = " + first + ";\n\n";

  out += "void setup(void)\n{\n";
  if (options.init_mode == InitMode::RuntimeFormula) {
    PrintOptions c_style;
    c_style.style = PrintStyle::C;
    const Expression formula = substitute(*sf.absolute.closed_form, kCodeVariable, Expression::variable("i"));
    out += "    int i;\n";
    out += "    for (i = " + first + "; i <= " + last + "; i++) {\n";
    out += "        " + arr + "[i] = " + to_string(formula, c_style) + ";\n";
    out += "    }\n";
  } else {
    out += "    /* " + arr + " is statically initialized */\n";
  }
  out += "}\n\n";

  out += "double scale_code(int code)\n{\n";
  out += "    if (code < " + first + ") {\n";
  out += "        return " + arr + "[" + first + "];\n";
  out += "    }\n";
  out += "    if (code > " + last + ") {\n";
  out += "        return " + arr + "[" + last + "];\n";
  out += "    }\n";
  out += "    return " + arr + "[code];\n";
  out += "}\n\n";

  out += "void send_data(double out)\n{\n";
  out += "    (void)out; /* wireless send or serial print goes here */\n";
  out += "}\n\n";

  out += "static int read_adc(int pin)\n{\n";
  out += "    (void)pin; /* platform analog read goes here */\n";
  out += "    return N;\n";
  out += "}\n\n";

  out += "void loop(void)\n{\n";
  out += "    N = read_adc(analogInPin);\n";
  out += "    outputValue = scale_code(N);\n";
  out += "    send_data(outputValue);\n";
  out += "    /* ESP.deepSleep(" + sleep_token(options.sleep_seconds) + "); */\n";
  out += "}\n";
  return out;
}

}  // namespace dmsscale
