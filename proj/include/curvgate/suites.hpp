// Seeded verification suites behind `curvgate verify`.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "curvgate/report.hpp"

namespace curvgate {

struct SuiteOptions {
  std::uint64_t seed = 0;
  int samples = 1000;  // trials for identities, frames per instance otherwise
  double tol = 1e-9;
};

inline constexpr int kChainInstances = 4;

std::vector<CheckRecord> suite_identities(const SuiteOptions& o);
std::vector<CheckRecord> suite_lemmas(const SuiteOptions& o);
std::vector<CheckRecord> suite_chains(const SuiteOptions& o);
std::vector<CheckRecord> suite_models(const SuiteOptions& o);

/// identities, lemmas, chains, models or all. Throws std::invalid_argument
/// on an unknown name.
std::vector<CheckRecord> run_suite(const std::string& name, const SuiteOptions& o);
const std::vector<std::string>& suite_names();

}  // namespace curvgate
