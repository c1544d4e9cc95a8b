#include <iostream>

#include "pwgraph/cli.hpp"

int main(int argc, char** argv) { return pwgraph::cli::main(argc, argv, std::cout, std::cerr); }
