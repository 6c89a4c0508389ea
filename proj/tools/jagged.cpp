#include <iostream>

#include "jagged/cli.hpp"

int main(int argc, char** argv) {
  return jagged::cli::run(argc, argv, std::cout, std::cerr);
}
