#include <string>
#include <vector>

#include "antler/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return antler::cli_main(std::move(args));
}
