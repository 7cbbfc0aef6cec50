#include <string>
#include <vector>

#include "comp2flex/cli.hpp"

int main(int argc, char** argv) {
  return comp2flex::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
