#include <iostream>

#include "dmsscale/cli.hpp"

int main(int argc, char** argv) { return dmsscale::run_cli(argc, argv, std::cout, std::cerr); }
