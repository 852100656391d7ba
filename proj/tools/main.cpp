#include <iostream>
#include <string>
#include <vector>

#include "awscheme/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return awscheme::cli_main(args, std::cout, std::cerr);
}
