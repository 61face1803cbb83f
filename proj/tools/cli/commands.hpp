#pragma once

namespace graphmark::cli {

// Exit codes: 0 ok, 2 config or usage, 3 I/O, 4 domain precondition.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitDomain = 4;

int run(int argc, char** argv);

}  // namespace graphmark::cli
