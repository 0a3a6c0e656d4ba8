#include <iostream>
#include <string>
#include <vector>

#include "hermite_ecg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hermite_ecg::run_cli(args, std::cout, std::cerr);
}
