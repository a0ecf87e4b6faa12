#pragma once

// Types shared by the Mermin and Svetlichny bound modules.

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <stdexcept>
#include <string>

#include "bellbound/linalg.hpp"
#include "bellbound/observables.hpp"

namespace bellbound {

/// An internal identity failed (e.g. a squared singular-value sum came out
/// clearly negative). Signals a bug, not bad input.
class ConsistencyError : public std::logic_error {
    using std::logic_error::logic_error;
};

/// A criterion was applied to a state or strength set outside its hypotheses.
class IncompatibleError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BoundReport {
    double bound_value = 0.0;
    std::string criterion;
    std::optional<Angles> achieving_angles;
    std::optional<MeasurementSetting> achieving_setting;
    std::optional<double> oracle_value;
    std::optional<double> gap;
    /// Closed-form value of the unbiased (+bias) bound at achieving_angles when
    /// that differs from bound_value, i.e. the formula is not attained there.
    std::optional<double> attained_value;
    std::string note;

    void attach_oracle(double value) {
        oracle_value = value;
        gap = bound_value - value;
    }
};

struct CriterionResult {
    double value = 0.0;
    bool violated = false;
};

struct PlusMinus {
    double plus = 0.0;
    double minus = 0.0;
};

struct Window {
    double r_unbiased = 0.0;
    double r_biased = 0.0;
};

inline constexpr double kRadicandClamp = 1e-10;

/// Σ s_i(T) s_i(V) from (I₊, I₋):  ½(s1+s2) I₊ + ½(s1−s2) I₋.
inline double pair_bound(const Vec3& s, const PlusMinus& pm) {
    return 0.5 * (s[0] + s[1]) * pm.plus + 0.5 * (s[0] - s[1]) * pm.minus;
}

/// √x for x ≥ −kRadicandClamp; more negative throws ConsistencyError naming `what`.
double clamped_sqrt(double x, const char* what);

/// Strength polynomials shared by the closed forms for I± and J±.
struct StrengthInvariants {
    double i0 = 0;       // R_X²(R_Y²R_Z'² + R_Y'²R_Z²) + R_X'²(R_Y²R_Z² + R_Y'²R_Z'²)
    double i_xy_z = 0;   // R_X R_X' R_Y R_Y' (R_Z² − R_Z'²)
    double i_xz_y = 0;   // R_X R_X' R_Z R_Z' (R_Y² − R_Y'²)
    double i_yz_x = 0;   // R_Y R_Y' R_Z R_Z' (R_X² − R_X'²)
    double i0_yz = 0;    // R_Y² R_Y'² (R_Z⁴ + R_Z'⁴)
    double i0_zy = 0;    // R_Z² R_Z'² (R_Y⁴ + R_Y'⁴)
    double i1 = 0;       // R_Y R_Y' R_Z R_Z'
    double j0 = 0;       // (R_X² + R_X'²)(R_Y² + R_Y'²)(R_Z² + R_Z'²)
    double j_yz_x = 0;   // R_X R_X' (R_Y² − R_Y'²)(R_Z² − R_Z'²)
    double j_xz_y = 0;   // R_Y R_Y' (R_X² − R_X'²)(R_Z² − R_Z'²)
    double j_xy_z = 0;   // R_Z R_Z' (R_X² − R_X'²)(R_Y² − R_Y'²)
    double rx_rxp = 0;   // R_X R_X'

    explicit StrengthInvariants(const StrengthSextuple& r);
    /// I⁰_YZ sin²θ_y + I⁰_ZY sin²θ_z + I₁²(1 − c), with c = cos2θ_y cos2θ_z
    /// (or its modulus for the exchange-symmetric forms).
    double inner(double theta_y, double theta_z, bool abs_cos = false) const;
};

/// Angles (θ_y, θ_z) with cosθ_y cosθ_z = c, split evenly between the two
/// parties. Putting it all on one party (θ_z = 0, so z = z') gives the same
/// closed-form value but a setting that reaches less.
inline std::pair<double, double> split_cos_product(double c) {
    const double m = std::sqrt(std::min(1.0, std::abs(c)));
    return {std::acos(m), std::acos(c < 0 ? -m : m)};
}

/// Relative singular-value degeneracy test used for routing: |s1−s2| ≤ 1e-9·max(1, s1).
bool top_pair_degenerate(const Vec3& s);

}  // namespace bellbound
