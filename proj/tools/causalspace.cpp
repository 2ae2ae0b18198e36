#include <iostream>

#include <unistd.h>

#include "causalspace/cli.hpp"

int main(int argc, char** argv) {
  return causalspace::cli::run(argc, argv, std::cin, std::cout, std::cerr, isatty(STDIN_FILENO) != 0);
}
