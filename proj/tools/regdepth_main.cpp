#include <iostream>

#include "regdepth/cli.hpp"

int main(int argc, char** argv) { return regdepth::cli_main(argc, argv, std::cout, std::cerr); }
