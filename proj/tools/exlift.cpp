#include <iostream>

#include "exlift/cli.hpp"

int main(int argc, char** argv) { return exlift::cli::run(argc, argv, std::cout, std::cerr); }
