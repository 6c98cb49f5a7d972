#include <vector>

#include "ekbench/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ekbench::cli::run(args);
}
