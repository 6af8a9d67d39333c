#include <cstdlib>
#include <iostream>
#include <set>
#include <string>

#include "phydsss/verify.hpp"

// Usage: acceptance [--expect-fail ID]... [--scale X] [--seed N]
// Prints one line per criterion. Exits 0 iff every criterion passes except
// those listed with --expect-fail, which must still be reported.
int main(int argc, char** argv) {
  phydsss::verify::VerifyOptions opts;
  opts.bank_dir = std::string(PHYDSSS_DATA_DIR) + "/banks";
  std::set<int> expected_fail;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--expect-fail" && i + 1 < argc) {
      expected_fail.insert(std::atoi(argv[++i]));
    } else if (a == "--scale" && i + 1 < argc) {
      opts.scale = std::atof(argv[++i]);
    } else if (a == "--seed" && i + 1 < argc) {
      opts.seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      std::cerr << "unknown argument " << a << "\n";
      return 2;
    }
  }
  const auto results = phydsss::verify::run_suite("all", opts);
  int unexpected = 0;
  for (const auto& r : results) {
    std::cout << phydsss::verify::format_result(r) << "\n";
    if (!r.passed && !expected_fail.count(r.id)) ++unexpected;
    if (r.passed && expected_fail.count(r.id)) std::cout << "  note: criterion " << r.id << " passed unexpectedly\n";
  }
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed;
  std::cout << passed << "/" << results.size() << " criteria passed";
  if (!expected_fail.empty()) std::cout << " (" << expected_fail.size() << " known failure tolerated)";
  std::cout << "\n";
  return unexpected ? 1 : 0;
}
