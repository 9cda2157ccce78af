#include <iostream>

#include "ccto/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ccto::run_cli(args, std::cout, std::cerr);
}
