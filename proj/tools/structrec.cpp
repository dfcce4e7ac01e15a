#include <iostream>

#include "structrec/cli/cli.hpp"

int main(int argc, char** argv) { return structrec::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
