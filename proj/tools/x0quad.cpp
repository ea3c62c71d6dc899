#include <iostream>

#include "x0quad/cli/run.hpp"

int main(int argc, char** argv) { return x0quad::cli::run(argc, argv, std::cout, std::cerr); }
