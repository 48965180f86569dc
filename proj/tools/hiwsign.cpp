#include <string>
#include <vector>

#include "hiwsign/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hiwsign::cli::run(args);
}
