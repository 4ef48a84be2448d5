#include "dmsscale/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "dmsscale/errors.hpp"

namespace dmsscale {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"sensor", {"min", "max", "unit", "symbol", "characteristic"}},
      {"adc", {"bits", "current_min", "current_max", "characteristic"}},
      {"system", {"characteristic"}},
      {"options", {"convention", "quantizer", "sleep_seconds", "init_mode", "array_name", "analog_pin"}},
  };
  return keys;
}

[[noreturn]] void config_error(const std::string& where, const std::string& message) {
  throw Error(ErrorCategory::Config, where + ": " + message);
}

std::string required(const pt::ptree& tree, const std::string& key) {
  const auto value = tree.get_optional<std::string>(key);
  if (!value || value->empty()) {
    config_error(key, "required key missing");
  }
  return *value;
}

std::string optional_text(const pt::ptree& tree, const std::string& key, std::string fallback) {
  const auto value = tree.get_optional<std::string>(key);
  return value ? *value : fallback;
}

double to_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    const std::string hint = text.find(',') != std::string::npos ? " (use '.' as the decimal separator)" : "";
    config_error(key, "'" + text + "' is not a number" + hint);
  }
  return v;
}

int to_int(const std::string& key, const std::string& text) {
  int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    config_error(key, "'" + text + "' is not an integer");
  }
  return v;
}

Characteristic characteristic(const std::string& key, const std::string& text, const Bindings& constants,
                              const std::string& default_variable) {
  ParseOptions options;
  for (const auto& [name, value] : constants) {
    options.constants.insert(name);
  }
  try {
    const Expression parsed = parse(text, options);
    const auto vars = variables(parsed);
    Characteristic c;
    c.variable = vars.empty() ? default_variable : *vars.begin();
    c.body = bind_constants(parsed, constants);
    return c;
  } catch (const Error& e) {
    config_error(key, e.what());
  }
}

}  // namespace

std::string_view convention_name(DeltaConvention convention) noexcept {
  return convention == DeltaConvention::FromMin ? "from_min" : "from_max";
}

Quantizer parse_quantizer(std::string_view text) {
  if (text == "nearest") return Quantizer::Nearest;
  if (text == "floor") return Quantizer::Floor;
  throw Error(ErrorCategory::Config, "quantizer: expected nearest or floor, got '" + std::string(text) + "'");
}

ConfigDocument parse_config(std::string_view text) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCategory::Config, "line " + std::to_string(e.line()) + ": " + e.message());
  }

  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end()) {
      config_error(section, "unknown section");
    }
    if (body.empty() && !body.data().empty()) {
      config_error(section, "key outside a section");
    }
    for (const auto& [key, value] : body) {
      if (it->second.count(key) == 0) {
        config_error(section + "." + key, "unknown key");
      }
    }
  }
  ConfigDocument doc;
  doc.sensor.min = to_real("sensor.min", required(tree, "sensor.min"));
  doc.sensor.max = to_real("sensor.max", required(tree, "sensor.max"));
  doc.sensor.unit = optional_text(tree, "sensor.unit", "");
  doc.sensor.symbol = optional_text(tree, "sensor.symbol", "x");
  doc.sensor.characteristic = required(tree, "sensor.characteristic");
  doc.adc.bits = to_int("adc.bits", required(tree, "adc.bits"));
  doc.adc.current_min = to_real("adc.current_min", required(tree, "adc.current_min"));
  doc.adc.current_max = to_real("adc.current_max", required(tree, "adc.current_max"));
  doc.adc.characteristic = required(tree, "adc.characteristic");
  doc.system.characteristic = required(tree, "system.characteristic");

  auto& opt = doc.options;
  const std::string convention = optional_text(tree, "options.convention", "from_min");
  if (convention == "from_min") {
    opt.convention = DeltaConvention::FromMin;
  } else if (convention == "from_max") {
    opt.convention = DeltaConvention::FromMax;
  } else {
    config_error("options.convention", "expected from_min or from_max, got '" + convention + "'");
  }
  opt.quantizer = parse_quantizer(optional_text(tree, "options.quantizer", "nearest"));
  if (const auto sleep = tree.get_optional<std::string>("options.sleep_seconds")) {
    opt.sleep_seconds = to_real("options.sleep_seconds", *sleep);
  }
  const std::string init = optional_text(tree, "options.init_mode", "runtime_formula");
  if (init == "runtime_formula") {
    opt.init_mode = InitMode::RuntimeFormula;
  } else if (init == "constant_table") {
    opt.init_mode = InitMode::ConstantTable;
  } else {
    config_error("options.init_mode", "expected runtime_formula or constant_table, got '" + init + "'");
  }
  opt.array_name = optional_text(tree, "options.array_name", opt.array_name);
  opt.analog_pin = optional_text(tree, "options.analog_pin", opt.analog_pin);
  return doc;
}

ConfigDocument load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCategory::Io, "cannot read " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

DmsSpec to_spec(const ConfigDocument& doc) {
  const std::string& symbol = doc.sensor.symbol;
  if (symbol.empty() || !is_c_identifier(symbol)) {
    config_error("sensor.symbol", "'" + symbol + "' is not an identifier");
  }
  if (symbol == "i" || symbol == "N") {
    config_error("sensor.symbol", "'" + symbol + "' clashes with the current/code constant names");
  }

  try {
    DmsSpec spec;
    spec.sensor_range = Range(doc.sensor.min, doc.sensor.max);
    spec.adc = AdcSpec(doc.adc.bits, Range(doc.adc.current_min, doc.adc.current_max));
    spec.unit = doc.sensor.unit;
    spec.symbol = symbol;
    spec.convention = doc.options.convention;

    const Bindings constants = chain_constants(spec.sensor_range, spec.adc, symbol);
    spec.sensor = characteristic("sensor.characteristic", doc.sensor.characteristic, constants, "d" + symbol);
    spec.converter = characteristic("adc.characteristic", doc.adc.characteristic, constants, "di");
    spec.system = characteristic("system.characteristic", doc.system.characteristic, constants, "d" + symbol);
    return spec;
  } catch (const Error& e) {
    if (e.category() == ErrorCategory::Config) throw;
    throw Error(ErrorCategory::Config, e.what());
  }
}

CodegenOptions codegen_options(const ConfigDocument& doc) {
  CodegenOptions o;
  o.init_mode = doc.options.init_mode;
  o.sleep_seconds = doc.options.sleep_seconds;
  o.array_name = doc.options.array_name;
  o.analog_pin = doc.options.analog_pin;
  return o;
}

}  // namespace dmsscale
