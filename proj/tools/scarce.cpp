#include <iostream>

#include "scarce/cli.hpp"

int main(int argc, char** argv) { return scarce::run_cli(argc, argv, std::cout, std::cerr); }
