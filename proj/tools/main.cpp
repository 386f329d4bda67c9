#include <iostream>

#include "cubebm/cli.hpp"

int main(int argc, char** argv) { return cubebm::cli::run_main(argc, argv, std::cout, std::cerr); }
