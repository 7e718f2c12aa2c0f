#include <iostream>

#include "springgp/cli.hpp"

int main(int argc, char** argv) { return springgp::cli::main(argc, argv, std::cout, std::cerr); }
