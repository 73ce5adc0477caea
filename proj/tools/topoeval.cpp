#include <iostream>

#include "topoeval/cli.hpp"

int main(int argc, char** argv) {
  return topoeval::run_cli(argc, argv, std::cout, std::cerr);
}
