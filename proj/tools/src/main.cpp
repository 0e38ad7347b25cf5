#include <iostream>

#include "selbias_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return selbias::cli::run(args, std::cout, std::cerr);
}
