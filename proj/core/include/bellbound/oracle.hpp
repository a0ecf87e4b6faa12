#pragma once

// Independent numerical maximisers used to check the closed forms.

#include <array>
#include <cstdint>
#include <optional>

#include "bellbound/bounds.hpp"
#include "bellbound/observables.hpp"
#include "bellbound/state.hpp"

namespace bellbound::oracle {

struct SeeSawConfig {
    int restarts = 20;
    int max_sweeps = 1000;
    double convergence_tol = 1e-13;
    std::uint64_t seed = 0;
    /// Keep each party's relative angle fixed at these values.
    std::optional<Angles> angle_constraints;

    /// Throws std::invalid_argument: restarts ≥ 1, max_sweeps ≥ 1, tol ≥ 1e-14.
    void validate() const;
};

struct SeeSawResult {
    /// max |⟨operator⟩| found; `setting` attains it (up to the sign of ⟨·⟩).
    double value = 0.0;
    MeasurementSetting setting = MeasurementSetting::in_plane(StrengthSextuple{}, Angles::orthogonal());
    int best_restart = 0;
    /// Sweeps used by the restart that produced `value`.
    int sweeps = 0;
    /// Some restart stopped at max_sweeps without meeting the tolerance.
    bool hit_max_sweeps = false;
    /// Most negative change of the objective between sweeps over all restarts
    /// (≥ −1e-12 for a monotone ascent).
    double worst_step = 0.0;
};

/// Alternating maximisation over directions with strengths and biases fixed.
/// Requires |B_i| ≤ 1 − R_i.
SeeSawResult see_saw_maximize(const CorrelationDecomposition& d, const StrengthSextuple& r,
                              const std::array<double, 6>& biases, OperatorKind kind, const SeeSawConfig& cfg);

/// Outer loop over the 64 extreme bias patterns B_i = ±(1 − R_i), see-saw inside.
SeeSawResult bias_optimize(const CorrelationDecomposition& d, const StrengthSextuple& r, OperatorKind kind,
                           const SeeSawConfig& cfg);

/// max |K| and max |L| by enumerating the 64 extreme bias patterns.
double k_brute_force(const StrengthSextuple& r);
double l_brute_force(const StrengthSextuple& r);

struct SaturationResult {
    bool constructible = false;
    /// Σ s_i(T) s_i(V or W).
    double bound = 0.0;
    /// |⟨operator⟩| on `setting`.
    double value = 0.0;
    double residual = 0.0;
    MeasurementSetting setting = MeasurementSetting::in_plane(StrengthSextuple{}, Angles::orthogonal());
};

/// Unbiased directions with the given strengths and relative angles that align
/// the party frames with T so the von Neumann pairing is attained. Frames are
/// found by alternating orthogonal Procrustes from several starts;
/// constructible iff the bound is reached within 1e-6.
SaturationResult construct_saturating_setting(const Mat3x9& t, const StrengthSextuple& r, const Angles& a,
                                              OperatorKind kind, std::uint64_t seed = 0);

inline constexpr int kGridMaxResolution = 12;

/// Unbiased lower witness: each Y and Z pair is confined to a plane (normal
/// and two in-plane angles on a uniform grid), X takes its exact best
/// response. Throws std::invalid_argument for resolution outside [2, 12].
double grid_scan(const CorrelationDecomposition& d, const StrengthSextuple& r, OperatorKind kind, int resolution);

}  // namespace bellbound::oracle
