#include <iostream>

#include "multiarr/cli.hpp"

int main(int argc, char** argv) {
  return multiarr::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
