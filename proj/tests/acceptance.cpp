/// Acceptance gate: runs every top-level verification criterion and prints
/// one PASS/FAIL line per criterion. Exit status 0 only if all pass.

#include <cstdio>

#include "pgcode/verify.hpp"

int main() {
  auto results = pgcode::run_acceptance();
  int failures = 0;
  double total = 0.0;
  for (const auto& r : results) {
    std::printf("criterion %2d: %s  %s (%.2fs)%s%s\n", r.id, r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.seconds, r.detail.empty() ? "" : "  -- ", r.detail.c_str());
    std::fflush(stdout);
    failures += r.pass ? 0 : 1;
    total += r.seconds;
  }
  std::printf("%zu criteria, %d failed, %.2fs total\n", results.size(), failures, total);
  return failures == 0 ? 0 : 1;
}
