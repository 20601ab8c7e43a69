// cli.hpp
// The qcrit command line: enumerate, states, verify, extend, bench.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 I/O error or malformed input file.

#pragma once

#include <iosfwd>

namespace qcrit::cli {

inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kIo = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcrit::cli
