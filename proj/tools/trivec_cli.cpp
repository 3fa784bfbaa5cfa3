#include <iostream>

#include "selftest.hpp"
#include "trivec/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  trivec::cli::Hooks hooks;
  hooks.selftest = trivec::selftest::run;
  return trivec::cli::run(args, std::cout, std::cerr, hooks);
}
