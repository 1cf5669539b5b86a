#include <iostream>
#include <string>
#include <vector>

#include "conecd/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return conecd::cli::run(args, std::cout);
}
