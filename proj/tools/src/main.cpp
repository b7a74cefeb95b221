#include <iostream>

#include "archdyn_cli/commands.hpp"

int main(int argc, char** argv) {
  return archdyn::cli::run_cli(argc, argv, std::cout, std::cerr);
}
