#include "resonf/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return resonf::run(argc, argv, std::cout, std::cerr); }
