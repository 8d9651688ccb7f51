#include <iostream>

#include "csg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  csg::cli::CliResult r = csg::cli::run(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.exit_code;
}
