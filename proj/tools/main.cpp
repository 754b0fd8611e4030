#include <iostream>
#include <string>
#include <vector>

#include "rootsim/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return rootsim::run_cli(args, std::cout, std::cerr);
}
