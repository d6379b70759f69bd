#include <iostream>

#include "lqmfg/cli.hpp"

int main(int argc, char** argv) {
  return lqmfg::cli::run(argc, argv, std::cout, std::cerr);
}
