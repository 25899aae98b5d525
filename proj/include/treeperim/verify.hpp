#ifndef TREEPERIM_VERIFY_HPP
#define TREEPERIM_VERIFY_HPP

#include <string>
#include <vector>

namespace treeperim {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

/// Runs the full verification suite. Report-only artifacts (profiles, gap
/// tables, nesting and local-structure dumps) are written under
/// `artifact_dir`, created if missing.
std::vector<CriterionResult> run_acceptance(const std::string& artifact_dir);

/// True iff every criterion passed.
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace treeperim

#endif
