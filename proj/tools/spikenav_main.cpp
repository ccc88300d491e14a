#include "spikenav/harness/cli.hpp"

int main(int argc, char** argv) { return spikenav::harness::cli_main(argc, argv); }
