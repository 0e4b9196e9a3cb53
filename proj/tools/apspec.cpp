#include <iostream>

#include "apspec/cli.hpp"

int main(int argc, char** argv) { return apspec::cli::run_cli(argc, argv, std::cout, std::cerr); }
