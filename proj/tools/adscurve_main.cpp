#include <iostream>

#include "adscurve/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return adscurve::run_cli(args, std::cout, std::cerr);
}
