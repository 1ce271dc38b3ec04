#include "spag/cli.hpp"

int main(int argc, char** argv) { return spag::cli_main(argc, argv); }
