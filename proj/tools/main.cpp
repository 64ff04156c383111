#include "rissec/experiments.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return rissec::exp::cli_run({argv + 1, argv + argc}, std::cout, std::cerr);
}
