#include <iostream>
#include <string>
#include <vector>

#include "permsym/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return permsym::cli::main_entry(args, std::cout, std::cerr);
}
