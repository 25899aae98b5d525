// Runs every verification criterion and prints one pass/fail line each.
#include <cstdio>

#include "treeperim/verify.hpp"

int main() {
  const auto results = treeperim::run_acceptance("artifacts");
  for (const auto& r : results) {
    std::printf("criterion %2d %s %s%s%s [%.2fs]\n", r.id,
                r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.empty() ? "" : " -- ", r.detail.c_str(), r.seconds);
  }
  return treeperim::all_passed(results) ? 0 : 1;
}
