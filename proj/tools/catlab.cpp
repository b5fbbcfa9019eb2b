#include <iostream>
#include <string>
#include <vector>

#include "catlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return catlab::cli::main_entry(args, std::cout, std::cerr);
}
