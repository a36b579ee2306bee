#include <iostream>

#include "couplinglab/cli.hpp"

int main(int argc, char** argv) {
  return couplinglab::cli_main(argc, argv, std::cout, std::cerr);
}
