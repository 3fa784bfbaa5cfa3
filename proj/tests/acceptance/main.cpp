#include <iostream>

#include "CLI11.hpp"
#include "criteria.hpp"

int main(int argc, char** argv) {
  using namespace trivec::acceptance;
  CLI::App app{"acceptance criteria"};
  int criterion = 0;
  CriterionOptions opt;
  bool verbose = false;
  app.add_option("--criterion", criterion, "criterion number")->required()->check(CLI::Range(1, kCriteria));
  app.add_option("--seed", opt.seed)->capture_default_str();
  app.add_option("--threads", opt.threads)->capture_default_str();
  app.add_flag("-v,--verbose", verbose, "print the detail JSON");
  CLI11_PARSE(app, argc, argv);

  auto r = run_criterion(criterion, opt);
  std::cout << "acceptance " << r.id << " [" << r.title << "]: " << (r.pass ? "PASS" : "FAIL") << "\n";
  if (verbose || !r.pass) std::cout << r.detail.dump(2) << "\n";
  return r.pass ? 0 : 1;
}
