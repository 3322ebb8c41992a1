#include <iostream>

#include "aitd/cli.hpp"

int main(int argc, char** argv) { return aitd::run_cli(argc, argv, std::cout, std::cerr); }
