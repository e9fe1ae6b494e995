#include <iostream>

#include "membranekit/cli.hpp"

int main(int argc, char** argv) {
  return mkit::experiment::cli_dispatch(argc, argv, std::cout, std::cerr);
}
