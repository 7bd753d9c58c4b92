#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rnlab::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalidInput = 2;
inline constexpr int kUndecidable = 3;
inline constexpr int kInternal = 4;

/// Runs one invocation; args excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rnlab::cli
