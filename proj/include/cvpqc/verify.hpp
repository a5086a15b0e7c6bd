// Self-checks over the library's identities, oracle equivalences and limits.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cvpqc/holevo.hpp"

namespace cvpqc {

enum class VerifySuite { identities, oracles, limits, all };

VerifySuite parse_verify_suite(const std::string& name);

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  bool quick = false;
  std::uint64_t seed = kDefaultSeed;
};

std::vector<CheckResult> run_verify(VerifySuite suite, const VerifyOptions& options = {});

/// One line per check followed by a summary line; deterministic output.
void print_report(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace cvpqc
