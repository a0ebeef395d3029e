#include <iostream>
#include <string>
#include <vector>

#include "posetdim/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return posetdim::run_command(args, std::cout, std::cerr);
}
