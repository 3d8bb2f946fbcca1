#include <iostream>
#include <string>
#include <vector>

#include "molien/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return molien::run_cli(args, std::cout, std::cerr);
}
