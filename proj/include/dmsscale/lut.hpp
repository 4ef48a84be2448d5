#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "dmsscale/dms_model.hpp"
#include "dmsscale/scaling.hpp"

namespace dmsscale {

/// Physical values for every integer ADC code in [first_code, last_code].
/// Codes below the window are not stored.
class LookupTable {
 public:
  /// Throws a Range error if values are empty or not strictly increasing.
  LookupTable(std::int64_t first_code, std::vector<double> values, std::string unit);

  std::int64_t first_code() const noexcept { return first_code_; }
  std::int64_t last_code() const noexcept { return first_code_ + static_cast<std::int64_t>(values_.size()) - 1; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  const std::string& unit() const noexcept { return unit_; }

  bool contains(std::int64_t code) const noexcept { return code >= first_code_ && code <= last_code(); }

 private:
  std::int64_t first_code_;
  std::vector<double> values_;
  std::string unit_;
};

inline constexpr std::int64_t kMaxTableEntries = std::int64_t{1} << 24;

/// ceil(N_min) when N_min is fractional, N_min otherwise.
std::int64_t first_window_code(const AdcBounds& bounds);

LookupTable build_lut(const ScalingFunction& sf, const AdcBounds& bounds);

/// Stored value for `code`; Range error outside the window.
double lookup(const LookupTable& table, std::int64_t code);

enum class ExportFormat { Csv, Json };

/// `code,value` header, one row per code, 10 significant digits.
std::string format_csv(const LookupTable& table);
/// {"first_code": ..., "unit": ..., "values": [...]}
std::string format_json(const LookupTable& table);

void export_table(const LookupTable& table, ExportFormat format, const std::filesystem::path& destination);

/// Writes text to a file, reporting failures as Io errors.
void write_text_file(const std::filesystem::path& destination, const std::string& text);

/// Round half away from zero to `decimals` places, for display only.
double round_display(double value, int decimals = 2);

}  // namespace dmsscale
