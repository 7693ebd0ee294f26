#pragma once

// Property suites behind `verify`. Every check is recorded with the measured
// value, the bound it is held to and the remaining slack.

#include <cstdint>
#include <string>
#include <vector>

#include "core/serialization.hpp"

namespace optcorr {

struct Assertion {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  std::string relation;  // "<=", ">=" or "=="
  double slack = 0.0;    // distance to the bound; negative on failure
  bool pass = false;
};

struct VerifyConfig {
  std::uint64_t seed = 0;
  int threads = 1;
};

struct VerifyReport {
  std::vector<Assertion> assertions;

  bool passed() const;
  std::string text() const;
  Json to_json(const Json& config) const;
};

const std::vector<std::string>& suite_names();
/// One of suite_names() or "all".
VerifyReport run_suite(const std::string& suite, const VerifyConfig& config = {});

}  // namespace optcorr
