#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lorentz/weights.hpp"

namespace lorentz {

struct ReproduceOptions {
    std::uint64_t seed = 7;
    int threads = 1;
    int horizon = kDefaultHorizon;
};

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::vector<std::string> lines;
};

struct SuiteReport {
    std::string suite;
    bool pass = false;
    std::vector<CriterionResult> criteria;
    std::string text; // deterministic rendering; byte-identical per (suite, seed, horizon)
};

// Suites: regularity (norm engine + weight diagnostics), bound (theorem
// constant, proof traces, key lemma), unbounded (partition search and the
// divergence witness), dkk (conditionality and construction norm), all.
const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& suite, const ReproduceOptions& options);

} // namespace lorentz
