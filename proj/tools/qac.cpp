#include "qac/cli/commands.hpp"

int main(int argc, char** argv) { return qac::cli::run_cli(argc, argv); }
