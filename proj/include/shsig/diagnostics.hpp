#ifndef SHSIG_DIAGNOSTICS_HPP_
#define SHSIG_DIAGNOSTICS_HPP_

#include <functional>
#include <string_view>

namespace shsig {

using WarningSink = std::function<void(std::string_view)>;

// Warnings go to stderr unless a sink is installed. Passing an empty sink
// restores the default. Not thread-safe; install once at startup.
void set_warning_sink(WarningSink sink);
void warn(std::string_view message);

}  // namespace shsig

#endif  // SHSIG_DIAGNOSTICS_HPP_
