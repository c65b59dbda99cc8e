#include <iostream>

#include "ptangle/cli.hpp"

int main(int argc, char** argv) {
  return ptangle::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
