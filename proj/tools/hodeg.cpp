#include <iostream>

#include "hodeg/cli.hpp"

int main(int argc, char** argv) { return hodeg::cli::run(argc, argv, std::cout, std::cerr); }
