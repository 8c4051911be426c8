#include <iostream>

#include "ncimax_cli/commands.hpp"

int main(int argc, char** argv) { return ncimax::cli::run_cli(argc, argv, std::cout, std::cerr); }
