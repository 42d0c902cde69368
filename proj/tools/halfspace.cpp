#include <iostream>

#include "halfspace/cli.hpp"

int main(int argc, char** argv) { return halfspace::cli::run_cli(argc, argv, std::cout, std::cerr); }
