#include <iostream>
#include <string>
#include <vector>

#include "tdc/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return tdc::cli::run(args, std::cout, std::cerr);
}
