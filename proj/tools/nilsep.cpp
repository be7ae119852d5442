#include <iostream>
#include <string>
#include <vector>

#include "nilsep/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nilsep::run_cli(args, std::cout, std::cerr);
}
