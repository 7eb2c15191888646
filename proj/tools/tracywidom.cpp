#include <iostream>

#include "tw/cli.hpp"

int main(int argc, char** argv) { return tw::cli::run(argc, argv, std::cout, std::cerr); }
