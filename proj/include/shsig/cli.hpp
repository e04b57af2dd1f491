#ifndef SHSIG_CLI_HPP_
#define SHSIG_CLI_HPP_

#include <ostream>

namespace shsig {

inline constexpr int kExitOk = 0;
inline constexpr int kExitReject = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

/// Entry point of the `shsig` tool. Verdicts and reports go to `out`,
/// diagnostics (prefixed with the error name) to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shsig

#endif  // SHSIG_CLI_HPP_
