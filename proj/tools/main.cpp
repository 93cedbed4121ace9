#include <iostream>
#include <vector>

#include "nahmforge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nahmforge::run_cli(args, std::cout, std::cerr);
}
