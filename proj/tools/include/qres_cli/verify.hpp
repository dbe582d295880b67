#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace qres::cli {

struct PropertyResult {
  std::string suite;
  std::string property;
  int samples = 0;
  double worst = 0.0;  // largest violation measure seen; passes iff worst <= tolerance
  double tolerance = 0.0;
  bool passed = false;
};

struct VerifySummary {
  std::vector<PropertyResult> results;
  bool all_passed() const;
};

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"entropy", "channels", "dilation", "quantifiers",
                                              "optimize"};
  return names;
}

// suite is one of verify_suites() or "all"; throws Error(Parse) otherwise.
VerifySummary run_verify(const std::string& suite, int samples, std::uint64_t seed);

}  // namespace qres::cli
