#include <string>
#include <vector>

#include "bundlex/run.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bundlex::run_command(args);
}
