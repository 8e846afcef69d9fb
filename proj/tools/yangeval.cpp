#include <iostream>
#include <string>
#include <vector>

#include "yangeval/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return yangeval::cli::run(args, std::cout, std::cerr);
}
