#include "dmsscale/lut.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "dmsscale/errors.hpp"

namespace dmsscale {

LookupTable::LookupTable(std::int64_t first_code, std::vector<double> values, std::string unit)
    : first_code_(first_code), values_(std::move(values)), unit_(std::move(unit)) {
  if (values_.empty()) {
    throw Error(ErrorCategory::Range, "lookup table window is empty");
  }
  for (std::size_t k = 1; k < values_.size(); ++k) {
    if (!(values_[k] > values_[k - 1])) {
      throw Error(ErrorCategory::Range, "lookup table not strictly increasing at code " +
                                            std::to_string(first_code_ + static_cast<std::int64_t>(k)));
    }
  }
}

std::int64_t first_window_code(const AdcBounds& bounds) {
  return static_cast<std::int64_t>(std::ceil(bounds.n_min));
}

LookupTable build_lut(const ScalingFunction& sf, const AdcBounds& bounds) {
  const std::int64_t first = first_window_code(bounds);
  const auto last = static_cast<std::int64_t>(bounds.n_max);
  if (first > last) {
    throw Error(ErrorCategory::Range, "code window is empty: N_min=" + format_number(bounds.n_min) +
                                          " rounds above N_max=" + format_number(bounds.n_max));
  }
  if (last - first + 1 > kMaxTableEntries) {
    throw Error(ErrorCategory::Range, "code window of " + std::to_string(last - first + 1) +
                                          " entries exceeds the table limit");
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(last - first + 1));
  for (std::int64_t code = first; code <= last; ++code) {
    values.push_back(eval_scaling(sf, static_cast<double>(code)));
  }
  return LookupTable(first, std::move(values), sf.unit);
}

double lookup(const LookupTable& table, std::int64_t code) {
  if (!table.contains(code)) {
    throw Error(ErrorCategory::Range, "code " + std::to_string(code) + " outside table window [" +
                                          std::to_string(table.first_code()) + ", " +
                                          std::to_string(table.last_code()) + "]");
  }
  return table.values()[static_cast<std::size_t>(code - table.first_code())];
}

std::string format_csv(const LookupTable& table) {
  std::string out = "code,value\n";
  std::int64_t code = table.first_code();
  for (const double v : table.values()) {
    out += std::to_string(code++);
    out += ',';
    out += format_number(v, 10);
    out += '\n';
  }
  return out;
}

std::string format_json(const LookupTable& table) {
  nlohmann::ordered_json doc;
  doc["first_code"] = table.first_code();
  doc["unit"] = table.unit();
  doc["values"] = std::vector<double>(table.values().begin(), table.values().end());
  return doc.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& destination, const std::string& text) {
  std::ofstream out(destination, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCategory::Io, "cannot open " + destination.string() + " for writing");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) {
    throw Error(ErrorCategory::Io, "failed writing " + destination.string());
  }
}

void export_table(const LookupTable& table, ExportFormat format, const std::filesystem::path& destination) {
  write_text_file(destination, format == ExportFormat::Csv ? format_csv(table) : format_json(table));
}

double round_display(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

}  // namespace dmsscale
