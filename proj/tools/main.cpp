#include <iostream>
#include <string>
#include <vector>

#include "nobleent/dispatch.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return nobleent::dispatch(args, std::cout, std::cerr);
}
