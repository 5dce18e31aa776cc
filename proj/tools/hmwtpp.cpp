#include <iostream>

#include "hmwtpp/cli.hpp"

int main(int argc, char** argv) {
  return hmwtpp::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
