#include <iostream>

#include "trp/cli.hpp"

int main(int argc, char** argv) { return trp::cli::run(argc, argv, std::cout, std::cerr); }
