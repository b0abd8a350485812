#include <iostream>

#include "homog/cli.hpp"

int main(int argc, char** argv) { return homog::run_cli(argc, argv, std::cout, std::cerr); }
