#include <iostream>

#include "jumphankel/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return jumphankel::run_cli(args, std::cout, std::cerr);
}
