#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fluxspec::acceptance {

enum class Suite { closed_form, fem, observational };

struct Check {
  std::string name;
  double measured = 0.0;
  double target = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  Suite suite = Suite::fem;
  bool observational = false;
  std::vector<Check> checks;
  double seconds = 0.0;
  std::string error;

  bool pass() const;
  /// The first failing check, else the last one.
  const Check* headline() const;
};

struct Options {
  std::string only;   // "", "closed-form", "fem" or "observational"
  int criterion = 0;  // a single criterion id; 0 runs all
  int coarsen = 0;   // refinement levels removed from every FEM mesh
  bool verbose = true;
};

inline constexpr int kMinimumNodes = 500;

std::vector<CriterionResult> run(const Options& options, std::ostream* progress = nullptr);

/// One "PASS|FAIL|WARN [n] name measured=... target=... tol=..." line per
/// criterion, followed by indented per-check lines when verbose.
void print(std::ostream& out, const std::vector<CriterionResult>& results, bool verbose);

/// 0 when every non-observational criterion passes, else 1.
int exit_code(const std::vector<CriterionResult>& results);

}  // namespace fluxspec::acceptance
