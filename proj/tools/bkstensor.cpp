#include "bks/cli/app.hpp"

#include <iostream>

int main(int argc, char** argv) { return bks::cli::cli_main(argc, argv, std::cout, std::cerr); }
