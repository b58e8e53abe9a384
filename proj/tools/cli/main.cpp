#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return editscore::cli::main_entry(argc, argv, std::cout, std::cerr); }
