#include <iostream>
#include <string>
#include <vector>

#include "qmetric/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qmetric::cli::run(args, std::cout, std::cerr);
}
