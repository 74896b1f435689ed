#include <iostream>
#include <string>
#include <vector>

#include "fermat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fermat::cli_dispatch(args, std::cout, std::cerr);
}
