#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lielcs {

struct PropertyResult {
  std::string name;
  int trials = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

enum class Suite { algebra, group, fields, larc, dynamics };

std::vector<Suite> all_suites();
std::string suite_name(Suite s);
/// Throws Errc::invalid_argument for unknown names.
Suite suite_from_name(const std::string& name);

struct VerifyOptions {
  /// Self-test hook: runs the algebra suite against a bracket with one term
  /// sign-flipped, which must trip the antisymmetry and Jacobi properties.
  bool inject_bracket_bug = false;
};

/// Runs the invariants-and-properties battery of one module with `trials`
/// randomized draws per property. trials = 0 yields an empty result list.
std::vector<PropertyResult> run_suite(Suite suite, int trials, std::uint64_t seed,
                                      const VerifyOptions& opts = {});

}  // namespace lielcs
