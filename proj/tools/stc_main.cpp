#include <iostream>
#include <string>
#include <vector>

#include "stc/driver.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stc::cli::run(args, std::cout, std::cerr);
}
