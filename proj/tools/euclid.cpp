#include "euclid/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return euclid::cli::run(argc, argv, std::cout, std::cerr);
}
