#include <iostream>

#include "ctherm/cli.hpp"

int main(int argc, char** argv) { return ctherm::cli::run_cli(argc, argv, std::cout, std::cerr); }
