#include <iostream>

#include "genring/cli.hpp"

int main(int argc, char** argv) { return genring::run_cli(argc, argv, std::cout, std::cerr); }
