#include "dkg/cli/runner.hpp"

int main(int argc, char** argv) { return dkg::cli::main_entry(argc, argv); }
