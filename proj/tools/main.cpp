#include <iostream>

#include "t4c/cli.hpp"

int main(int argc, char** argv) { return t4c::cli::run(argc, argv, std::cout, std::cerr); }
