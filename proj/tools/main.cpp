#include <iostream>

#include "qwle/cli.hpp"

int main(int argc, char** argv) { return qwle::run_cli(argc, argv, std::cout, std::cerr); }
