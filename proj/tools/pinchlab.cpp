#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "pinchlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  const char* threads = std::getenv("PINCHLAB_THREADS");
  return pinchlab::cli::run(args, std::cout, std::cerr, threads ? threads : "");
}
