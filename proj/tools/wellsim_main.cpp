#include "wellsim/cli.hpp"

int main(int argc, char** argv) { return wellsim::cli::run(argc, argv); }
