// Acceptance runner: one PASS/FAIL (WARN for observational items) line per
// criterion, then the individual checks.

#include <CLI11.hpp>
#include <iostream>

#include "fluxspec/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  fluxspec::acceptance::Options options;
  bool quiet = false;
  app.add_option("--only", options.only)->check(CLI::IsMember({"closed-form", "fem", "observational"}));
  app.add_option("--criterion", options.criterion, "run a single criterion")->check(CLI::Range(1, 11));
  app.add_option("--coarsen", options.coarsen)->check(CLI::NonNegativeNumber);
  app.add_flag("--quiet", quiet);
  CLI11_PARSE(app, argc, argv);
  options.verbose = !quiet;
  const auto results = fluxspec::acceptance::run(options, &std::cout);
  return fluxspec::acceptance::exit_code(results);
}
