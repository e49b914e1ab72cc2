#include "kstat/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kstat::cli::run(args, std::cout, std::cerr);
}
