#include <iostream>

#include "qwire/cli/cli.hpp"

int main(int argc, char** argv) { return qwire::cli::run(argc, argv, std::cout, std::cerr); }
