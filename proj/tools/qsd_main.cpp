#include "qsd/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qsd::cli::run(argc, argv, std::cout, std::cerr); }
