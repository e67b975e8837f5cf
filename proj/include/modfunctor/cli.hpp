#pragma once

#include <ostream>

namespace modfunctor {

inline constexpr int exit_pass = 0;
inline constexpr int exit_check_failure = 1;
inline constexpr int exit_input_error = 2;

// Entry point of the modfunctor tool; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace modfunctor
