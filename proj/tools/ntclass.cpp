#include <iostream>

#include "nt/cli.hpp"

int main(int argc, char** argv) { return nt::run(argc, argv, std::cout, std::cerr); }
