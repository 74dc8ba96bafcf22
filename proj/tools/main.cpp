#include "cli.hpp"

int main(int argc, char** argv) { return aircomp::cli_main(argc, argv); }
