#include "edf/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return edf::cli::main(argc, argv, std::cout, std::cerr); }
