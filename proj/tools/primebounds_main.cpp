#include <iostream>

#include "primebounds/cli.hpp"

int main(int argc, char** argv) {
  return primebounds::run_cli(argc, argv, std::cout, std::cerr);
}
