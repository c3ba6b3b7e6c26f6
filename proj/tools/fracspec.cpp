#include "fracspec/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fracspec::cli::main_entry(argc, argv, std::cout, std::cerr); }
