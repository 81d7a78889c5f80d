#include "dirac1c/cli.hpp"

int main(int argc, char** argv) { return dirac1c::cli_main(argc, argv); }
