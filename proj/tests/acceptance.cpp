// One line per acceptance criterion; exit status is nonzero if any fails.

#include <cstdio>
#include <cstdlib>

#include "ultra/suite.hpp"

int main(int argc, char** argv) {
  ultra::suite::SuiteConfig config;
  if (argc > 1) config.seed = std::strtoull(argv[1], nullptr, 10);
  const auto results = ultra::suite::run_all(config);
  for (const auto& r : results) {
    std::printf("[%s] criterion %d %-26s checked=%zu violations=%zu time=%.3fs", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.checked, r.violations, r.seconds);
    if (r.time_limit > 0) std::printf(" (limit %.0fs)", r.time_limit);
    if (!r.detail.empty()) std::printf(" first: %s", r.detail.c_str());
    std::printf("\n");
  }
  return ultra::suite::all_passed(results) ? 0 : 1;
}
