#pragma once

// Criterion routing, angle resolution and oracle attachment behind the
// `bound` and `scan` subcommands.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellbound/bellbound.hpp"

namespace bellbound::cli {

/// Invalid configuration; `field()` names the offending flag.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& msg)
        : std::invalid_argument(field + ": " + msg), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

enum class OperatorSel { mermin, svetlichny, both };

struct RunConfig {
    std::string state_text = "ghz";
    states::StateSpec state;
    StrengthSextuple strengths;
    std::optional<std::array<double, 6>> biases;
    std::optional<Angles> angles;  // empty: optimal
    OperatorSel op = OperatorSel::both;
    std::vector<std::string> criteria;  // empty: all-applicable
    int oracle_restarts = 0;
    std::uint64_t seed = 0;
    int angle_grid = 64;

    /// Throws ConfigError.
    void validate() const;
};

struct ReportRow {
    OperatorKind op;
    BoundReport report;
    bool violated = false;
};

inline constexpr double kApplicabilityTol = 1e-12;

/// Every criterion name the CLI accepts.
const std::vector<std::string>& criterion_catalog();

/// The maximiser of the unbiased closed form over relative angles: the
/// printed optimal angles when their hypotheses hold, replaced by the best
/// point of a grid^3 search if that is strictly larger.
Angles optimal_angles(OperatorKind op, const Mat3x9& t, const StrengthSextuple& r, int grid);

/// Throws IncompatibleError (explicit criterion outside its hypotheses),
/// ConfigError or PhysicalityError.
std::vector<ReportRow> compute_reports(const RunConfig& cfg, const CorrelationDecomposition& d);

}  // namespace bellbound::cli
