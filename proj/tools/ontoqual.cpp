#include <iostream>

#include "ontoqual/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ontoqual::cli::run(args, std::cout, std::cerr);
}
