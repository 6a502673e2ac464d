// Acceptance runner: one pass/fail line per release criterion, nonzero exit
// on any failure. `ptscatter validate` runs the same checks with a JSON
// summary.

#include <cstdio>

#include "ptscatter/acceptance.hpp"

int main() {
  const auto results = ptscatter::acceptance::run_all({});
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] %s (%.2f s): %s\n", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.seconds, r.detail.c_str());
    if (!r.passed && !r.informational) ++failed;
  }
  std::printf("%zu checks, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}
