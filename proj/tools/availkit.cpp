#include "availkit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return availkit::cli::run(argc, argv, std::cout, std::cerr);
}
