#include <iostream>

#include "tprobe/cli.hpp"

int main(int argc, char** argv) { return tprobe::cli::run(argc, argv, std::cout, std::cerr); }
