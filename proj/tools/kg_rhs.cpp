#include <iostream>

#include "kgrhs/cli.hpp"

int main(int argc, char** argv) { return kgrhs::run_cli(argc, argv, std::cout, std::cerr); }
