#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hcd::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kVerificationFailure = 3 };

/// Environment variable that sets the default numeric mode ("exact" or "float").
inline constexpr const char* kModeEnv = "HCD_NUMERIC_MODE";

/// Runs the command line `args` (without the program name). `in` backs the
/// path "-". Returns the process exit code.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& default_mode = std::nullopt);

}  // namespace hcd::cli
