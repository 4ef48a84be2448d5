#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dmsscale {

/// Broad failure classes. The CLI maps each one to its own exit status.
enum class ErrorCategory {
  Syntax,      // malformed DSL text
  Config,      // malformed or incomplete configuration document
  Validation,  // characteristic violates a required property
  Domain,      // evaluation outside the mathematical domain
  Range,       // value outside an allowed window
  Io,          // file system failure
  Codegen,     // code generation request cannot be honored
};

std::string_view category_name(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

/// DSL syntax error carrying the byte offset of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::string expected, const std::string& message)
      : Error(ErrorCategory::Syntax, message + " at offset " + std::to_string(offset)),
        offset_(offset),
        expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::string expected_;
};

}  // namespace dmsscale
