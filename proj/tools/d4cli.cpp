#include <iostream>

#include "d4/cli.hpp"

int main(int argc, char** argv) {
  return d4::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
