#include <iostream>

#include "qbailey/cli.hpp"

int main(int argc, char** argv) { return qbailey::run_cli(argc, argv, std::cout, std::cerr); }
