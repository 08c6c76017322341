#include <iostream>

#include "rescurve/cli.hpp"

int main(int argc, char** argv) { return rescurve::cli::run(argc, argv, std::cout, std::cerr); }
