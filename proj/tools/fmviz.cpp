#include <iostream>

#include "fmviz/cli.hpp"

int main(int argc, char** argv) { return fmviz::cli::run(argc, argv, {std::cout, std::cerr}); }
