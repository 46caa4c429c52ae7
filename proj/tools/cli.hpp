#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bss::cli {

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kNo = 1;     // did not halt, not a member, invalid code
inline constexpr int kUsage = 2;  // bad flags or unreadable input

/// Runs one bssctl command; args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bss::cli
