#include <iostream>

#include "cuspkit/cli.hpp"

int main(int argc, char** argv) { return cuspkit::cli::run(argc, argv, std::cout, std::cerr); }
