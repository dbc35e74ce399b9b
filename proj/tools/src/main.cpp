#include <iostream>
#include <string>
#include <vector>

#include "cmv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cmv::run_cli(args, std::cout, std::cerr);
}
