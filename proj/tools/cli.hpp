#ifndef ARITHDIFF_TOOLS_CLI_HPP
#define ARITHDIFF_TOOLS_CLI_HPP

#include <ostream>

namespace arithdiff::cli
{

// Exit codes: 0 success or passing check, 1 failed check or computational
// error, 2 usage or validation error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace arithdiff::cli

#endif
