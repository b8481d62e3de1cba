#include <iostream>

#include "laxfact/cli.hpp"

int main(int argc, char** argv) { return laxfact::run_cli(argc, argv, std::cout, std::cerr); }
