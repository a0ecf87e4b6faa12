#pragma once

// Benchmark states: GHZ and its relatives, W, T-states from a correlation
// tensor, white-noise mixtures and seeded random mixed states.

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <string>

#include "bellbound/state.hpp"

namespace bellbound::states {

struct StateSpec {
    enum class Kind { ghz, gghz, w, tstate, mix, random };

    Kind kind = Kind::ghz;
    double theta = 0.0;       // gghz, in [0, π/2]
    Mat3x9 t{};               // tstate
    std::shared_ptr<const StateSpec> base;  // mix
    double visibility = 1.0;  // mix, in [0, 1]
    std::uint64_t seed = 0;   // random

    static StateSpec ghz();
    static StateSpec gghz(double theta);
    static StateSpec w();
    static StateSpec tstate(const Mat3x9& t);
    static StateSpec mix(const StateSpec& base, double visibility);
    static StateSpec random(std::uint64_t seed);

    /// Throws std::invalid_argument for out-of-range parameters.
    void validate() const;
};

/// Throws PhysicalityError (tstate with a negative eigenvalue) or
/// std::invalid_argument (bad parameters).
ThreeQubitState build(const StateSpec& spec);

/// l, m, n, Θ, Φ, Ω all vanish (max-abs ≤ tol).
bool is_tstate(const CorrelationDecomposition& d, double tol = 1e-10);

DensityMatrix projector(const std::array<Complex, 8>& psi);

/// Row-major 2×2.
using Unitary2 = std::array<Complex, 4>;

/// Uniform on SU(2) (normalised Gaussian quaternion).
Unitary2 random_unitary(std::mt19937_64& rng);
/// U σ_j U† = Σ_i R_ij σ_i.
Mat3 bloch_rotation(const Unitary2& u);
/// (U_A⊗U_B⊗U_C) ρ (U_A⊗U_B⊗U_C)†.
ThreeQubitState apply_local(const ThreeQubitState& s, const Unitary2& ua, const Unitary2& ub, const Unitary2& uc);

/// Standard normal from two 53-bit uniforms (Box-Muller); identical on every
/// platform for a given generator state, unlike std::normal_distribution.
double gaussian(std::mt19937_64& rng);
double uniform01(std::mt19937_64& rng);

}  // namespace bellbound::states
