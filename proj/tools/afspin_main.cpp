#include <iostream>

#include "afspin/cli.hpp"

int main(int argc, char** argv) {
  return afspin::run_cli(argc, argv, std::cout, std::cerr);
}
