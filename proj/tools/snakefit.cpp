#include <iostream>

#include "snake/cli.hpp"

int main(int argc, char** argv) { return snake::cli::main_entry(argc, argv, std::cout, std::cerr); }
