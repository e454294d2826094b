#include <iostream>

#include "transpec/cli.hpp"

int main(int argc, char** argv) { return transpec::cli::run(argc, argv, std::cout, std::cerr); }
