#pragma once

#include <iosfwd>

namespace crnf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitDomain = 2;

/// Runs one `crnf <command> ...` invocation. Reports go to the --output file
/// (written atomically) or to `out`; summaries and diagnostics go to `err`.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace crnf::cli
