#include <iostream>

#include "qglr/cli.hpp"

int main(int argc, char** argv) { return qglr::cli_main(argc, argv, std::cout, std::cerr); }
