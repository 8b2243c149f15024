#include <iostream>

#include "lrcyc/cli.hpp"

int main(int argc, char** argv) { return lrcyc::cli_main(argc, argv, std::cout, std::cerr); }
