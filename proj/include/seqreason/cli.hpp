#pragma once

#include <iosfwd>

namespace seqreason::cli {

// exit codes
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kData = 2;
inline constexpr int kTransport = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace seqreason::cli
