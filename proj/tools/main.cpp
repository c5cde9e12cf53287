#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  mcps::cli::Cli cli(std::cout, std::cerr);
  return cli.run(argc, argv);
}
