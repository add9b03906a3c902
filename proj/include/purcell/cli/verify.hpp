#pragma once

#include "purcell/cli/sweep.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace purcell::cli {

enum class VerifySuite { All, Duality, Conventions, Oracle, Identities };

// Throws DomainError for an unknown name.
VerifySuite parse_suite(std::string_view name);
std::string_view to_string(VerifySuite suite);

struct SuiteResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;     // worst residual found
  double tolerance = 0.0;
  std::string detail;     // where the worst residual sits
};

struct VerifyOptions {
  // Replace the configured medium by vacuum.
  bool vacuum = false;
};

// Runs the requested suites on the configured medium, grid and radii.
std::vector<SuiteResult> run_verify(VerifySuite suite, const SweepConfig &config,
                                    const VerifyOptions &options = {});

// One line per suite; returns true when all passed.
bool write_verify_report(std::ostream &out,
                         const std::vector<SuiteResult> &results);

} // namespace purcell::cli
