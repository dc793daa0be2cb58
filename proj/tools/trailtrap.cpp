#include <iostream>

#include "trailtrap/cli.hpp"

int main(int argc, char** argv) { return trailtrap::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
