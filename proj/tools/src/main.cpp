#include <iostream>

#include "bosent_cli/cli.hpp"

int main(int argc, char** argv) { return bosent::cli::run(argc, argv, std::cout, std::cerr); }
