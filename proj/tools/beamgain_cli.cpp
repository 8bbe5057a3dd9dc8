#include "beamgain/cli.hpp"

int main(int argc, char** argv) { return beamgain::cli_main(argc, argv); }
