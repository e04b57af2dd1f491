#include <iostream>

#include "shsig/cli.hpp"

int main(int argc, char** argv) { return shsig::cli_main(argc, argv, std::cout, std::cerr); }
