#include <iostream>

#include "qes/commands.hpp"

int main(int argc, char** argv) { return qes::cli::run(argc, argv, std::cout, std::cerr); }
