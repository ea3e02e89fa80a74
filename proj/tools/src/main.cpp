#include <iostream>

#include "orbitkit/cli.hpp"

int main(int argc, char** argv) { return orbitkit::cli::main_entry(argc, argv, std::cout, std::cerr); }
