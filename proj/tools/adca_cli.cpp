#include <iostream>

#include "adca/cli.hpp"

int main(int argc, char** argv) {
  return adca::cli::dispatch({argv + 1, argv + argc}, std::cout, std::cerr);
}
