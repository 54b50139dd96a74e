#pragma once

#include <string>

// Command-line front end. run() owns the full lifecycle: parse, execute,
// serialize, and map failures to exit codes (0 success, 1 usage, 2
// numerical, 3 output I/O).

namespace wellsim::cli {

// Times on the command line are plain numbers, pi fractions such as
// "pi/4", "3pi/8" or "pi/2sqrt2", or the protocol names "hom" and
// "revival", which resolve to the two context constants given here.
double parse_time(const std::string& text, double hom_time, double revival_time);

int run(int argc, const char* const* argv);

}  // namespace wellsim::cli
