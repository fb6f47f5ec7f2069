#pragma once

namespace sesh::cli {

// Exit codes: 0 success, 1 internal failure, 2 input error,
// 3 malformed certificate file, 4 verification failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitMalformed = 3;
inline constexpr int kExitVerifyFailed = 4;

int run(int argc, const char* const* argv);

} // namespace sesh::cli
