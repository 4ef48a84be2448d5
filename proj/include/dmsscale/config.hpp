#pragma once

// Sectioned key-value configuration, one section per chain block:
//
//   [sensor]   min, max, unit, symbol, characteristic
//   [adc]      bits, current_min, current_max, characteristic
//   [system]   characteristic
//   [options]  convention, quantizer, sleep_seconds, init_mode,
//              array_name, analog_pin
//
// Characteristics are DSL text over one delta variable and may use the
// named constants from chain_constants().

#include <filesystem>
#include <string>
#include <string_view>

#include "dmsscale/codegen.hpp"
#include "dmsscale/dms_model.hpp"
#include "dmsscale/simulate.hpp"

namespace dmsscale {

struct ConfigDocument {
  struct Sensor {
    double min = 0.0;
    double max = 0.0;
    std::string unit;
    std::string symbol = "x";
    std::string characteristic;
  } sensor;

  struct Adc {
    int bits = 0;
    double current_min = 0.0;
    double current_max = 0.0;
    std::string characteristic;
  } adc;

  struct System {
    std::string characteristic;
  } system;

  struct Options {
    DeltaConvention convention = DeltaConvention::FromMin;
    Quantizer quantizer = Quantizer::Nearest;
    double sleep_seconds = 60.0;
    InitMode init_mode = InitMode::RuntimeFormula;
    std::string array_name = "Q_star";
    std::string analog_pin = "A0";
  } options;
};

/// Config errors carry the offending section.key.
ConfigDocument parse_config(std::string_view text);
ConfigDocument load_config(const std::filesystem::path& path);

/// Parses and binds the characteristics. DSL errors surface as Config errors.
DmsSpec to_spec(const ConfigDocument& doc);

CodegenOptions codegen_options(const ConfigDocument& doc);

std::string_view convention_name(DeltaConvention convention) noexcept;
Quantizer parse_quantizer(std::string_view text);

}  // namespace dmsscale
