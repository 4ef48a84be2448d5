#pragma once

// Embedded C emitter: a single C89 translation unit with a directly indexed
// conversion table, an init section, and an inert read-convert-send loop.

#include <string>

#include "dmsscale/dms_model.hpp"
#include "dmsscale/lut.hpp"
#include "dmsscale/scaling.hpp"

namespace dmsscale {

enum class InitMode {
  RuntimeFormula,  // boot-time loop evaluating the closed form
  ConstantTable,   // braced initializer with precomputed values
};

struct CodegenOptions {
  InitMode init_mode = InitMode::RuntimeFormula;
  double sleep_seconds = 60.0;
  std::string array_name = "Q_star";
  std::string analog_pin = "A0";
};

inline constexpr int kMaxCodegenBits = 24;

/// Throws a Codegen error for invalid options, identifier collisions, or
/// runtime-formula mode without a closed form.
std::string emit(const DmsSpec& spec, const ScalingFunction& sf, const LookupTable& table,
                 const CodegenOptions& options = {});

bool is_c_identifier(const std::string& name);

}  // namespace dmsscale
