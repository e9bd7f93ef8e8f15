#include <iostream>
#include <string>
#include <vector>

#include "bisector_lab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bisector_lab::run_cli(args, std::cout, std::cerr);
}
