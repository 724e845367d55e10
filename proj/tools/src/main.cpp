#include <iostream>

#include "isores_cli/cli.hpp"

int main(int argc, char** argv) { return isores::cli::main_entry(argc, argv, std::cout, std::cerr); }
