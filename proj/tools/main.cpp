#include <iostream>
#include <string>
#include <vector>

#include "hardy/harness.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hardy::run_cli(args, std::cout, std::cerr);
}
