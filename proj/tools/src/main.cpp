#include <iostream>

#include "spreadline/cli.hpp"

int main(int argc, char** argv) { return spreadline::cli::run(argc, argv, std::cout, std::cerr); }
