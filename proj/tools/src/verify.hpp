#pragma once

// Seeded property suites behind `bellbound verify`.

#include <cstdint>
#include <string>
#include <vector>

namespace bellbound::cli {

struct PropertyResult {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    int instances = 0;
    bool pass() const { return max_deviation <= tolerance; }
};

struct SuiteResult {
    std::string suite;
    std::uint64_t seed = 0;
    int budget = 0;
    std::vector<PropertyResult> properties;
    bool pass() const;
};

const std::vector<std::string>& suite_names();
/// Default instance count per suite.
int default_budget(const std::string& suite);
/// Throws std::invalid_argument for an unknown suite or budget < 1.
SuiteResult run_suite(const std::string& suite, std::uint64_t seed, int budget);

}  // namespace bellbound::cli
