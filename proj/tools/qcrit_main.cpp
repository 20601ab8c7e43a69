#include "qcrit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qcrit::cli::run(argc, argv, std::cout, std::cerr); }
