#include <iostream>

#include "pfafflab/cli.hpp"

int main(int argc, char** argv) { return pfafflab::run_cli(argc, argv, std::cout, std::cerr); }
