#include <iostream>
#include <string>
#include <vector>

#include "linedarp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return linedarp::cli::run(args, std::cout, std::cerr);
}
