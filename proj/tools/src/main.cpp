#include "pnscale_cli/cli.hpp"

int main(int argc, char** argv) { return pnscale_cli::main_entry(argc, argv); }
