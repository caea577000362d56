#include <iostream>

#include "patternex/cli.hpp"

int main(int argc, char** argv) { return patternex::cli::run(argc, argv, std::cout, std::cerr); }
