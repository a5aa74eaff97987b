#include <iostream>

#include "quadratis/cli.hpp"

int main(int argc, char** argv) { return quadratis::run_cli(argc, argv, std::cout, std::cerr); }
