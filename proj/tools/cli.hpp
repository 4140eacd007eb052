#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bobtail::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kNumeric = 3,
    kSelfcheckFailed = 4,
};

/// Environment variable naming the directory for results when --output is absent.
inline constexpr const char* kOutputDirEnv = "BOBTAIL_OUTPUT_DIR";

/// Entry point behind the `bobtail` binary. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs the statistical self-check suite, printing one line per identity.
/// Returns the number of failures.
int selfcheck(std::ostream& out, unsigned jobs, unsigned long long seed);

} // namespace bobtail::cli
