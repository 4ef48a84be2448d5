#pragma once

#include <iosfwd>

namespace dmsscale {

/// Exit statuses of the dmsscale tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,       // bad command line
  kExitConfig = 2,      // config or characteristic text cannot be parsed
  kExitValidation = 3,  // characteristic violates a required property
  kExitIo = 4,          // file cannot be read or written
  kExitDomain = 5,      // evaluation outside the valid domain or window
  kExitCodegen = 6,     // code generation request cannot be honored
};

/// Runs `dmsscale derive|lut|codegen|simulate ...`. Expected failures print a
/// single `error: <category>: <message>` line to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dmsscale
