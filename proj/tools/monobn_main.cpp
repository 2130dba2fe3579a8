#include <iostream>

#include "monobn/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return monobn::run_cli(args, std::cout, std::cerr);
}
