#include <iostream>

#include "wt1/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wt1::cli::run(args, std::cin, std::cout, std::cerr);
}
