#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace chaoskit {

// One checked identity. Exact checks report error 0 or 1 with bound 0; floating and
// Monte Carlo checks report the absolute deviation against their own bound.
struct SuiteCase {
  std::string name;
  double error = 0.0;
  double bound = 0.0;
  bool passed() const { return error <= bound; }
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteCase> cases;
  double max_error() const;
  std::vector<std::string> failures() const;
  bool passed() const { return failures().empty(); }
};

struct SuiteOptions {
  std::uint64_t seed = 7;
  unsigned workers = 1;
  double tol = 1e-10;  // bound for floating identities that have no stated tolerance of their own
};

// hermite, isometry, product, stroock, humeyer, ou, wick, independence, moments, fmt,
// estimator, clarkocone
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace chaoskit
