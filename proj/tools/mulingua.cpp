#include <iostream>

#include "mulingua/cli.hpp"

int main(int argc, char** argv) {
  return mulingua::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
