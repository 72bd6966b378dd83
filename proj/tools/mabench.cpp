#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mabench/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env_seed;
  if (const char* seed = std::getenv("MA_BENCH_SEED")) env_seed = seed;
  return mabench::run_cli(args, std::cout, std::cerr, env_seed);
}
