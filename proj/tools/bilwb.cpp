#include <iostream>
#include <string>
#include <vector>

#include "bil/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bil::run(args, std::cout, std::cerr);
}
