#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "degseq/exact.hpp"
#include "harness/io.hpp"

namespace harness {

struct SuiteConfig {
  std::uint64_t seed = 1;
  degseq::CountLimits limits;
  std::size_t samples = 100000;
};

struct CheckRecord {
  std::string id;
  std::string anchor;  // the formula or property checked, or "plumbing"
  std::string status;  // pass | fail | flag | skipped: cap
  json measured;
  json target;
  double tolerance = 0;
  std::string note;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckRecord> records;
  json environment;

  // 0 if nothing failed, 3 if a check hit a resource cap and none failed, else 1.
  int exit_code() const;
  json to_json() const;
};

const std::vector<std::string>& suite_names();

// Throws InputError for an unknown name.
VerificationReport run_suite(const std::string& name, const SuiteConfig& config);

// Exhaustive count over all 0-1 matrices, used by the oracle suite.
unsigned long long brute_force_count(const degseq::DegreeSequence& d, const std::vector<degseq::Edge>& forbidden,
                                     const std::vector<degseq::Edge>& forced);

}  // namespace harness
