#include <iostream>

#include "arborab/cli/run.hpp"

int main(int argc, char** argv) { return arborab::cli::run(argc, argv, std::cout, std::cerr); }
