#include <iostream>

#include "rudinlab/cli.hpp"

int main(int argc, char** argv) {
  return rudinlab::cli::run(argc, argv, std::cout, std::cerr);
}
