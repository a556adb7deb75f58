#include <iostream>

#include "obf_cli/cli.hpp"

int main(int argc, char** argv) { return obf::cli::run(argc, argv, std::cout, std::cerr); }
