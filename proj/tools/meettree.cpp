#include <iostream>
#include <string>
#include <vector>

#include "meettree/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return meettree::dispatch(args, std::cout, std::cerr);
}
