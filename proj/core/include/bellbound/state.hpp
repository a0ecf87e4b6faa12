#pragma once

// Three-qubit density operators and their Pauli-coefficient form
//   ρ = 1/8 Σ Λ_{μνγ} σ_μ⊗σ_ν⊗σ_γ,   Λ_{μνγ} = Tr[(σ_μ⊗σ_ν⊗σ_γ) ρ].
// Qubit A is the most significant bit of the 8-dim basis index.

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include "bellbound/linalg.hpp"

namespace bellbound {

using Complex = std::complex<double>;
/// Row-major 8×8, entry (r, c) at 8*r + c.
using DensityMatrix = std::array<Complex, 64>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

class PhysicalityError : public std::runtime_error {
public:
    PhysicalityError(std::string invariant, const std::string& detail)
        : std::runtime_error(invariant + ": " + detail), invariant_(std::move(invariant)) {}
    /// "hermitian", "unit_trace" or "positive_semidefinite".
    const std::string& invariant() const { return invariant_; }

private:
    std::string invariant_;
};

/// Smallest eigenvalue of a Hermitian 8×8 matrix (Jacobi on the 16×16 real
/// embedding [[Re, −Im], [Im, Re]]).
double hermitian_min_eigenvalue(const DensityMatrix& m);
/// max |m − m†| over entries.
double hermitian_defect(const DensityMatrix& m);
Complex trace(const DensityMatrix& m);

class ThreeQubitState {
public:
    /// Validates Hermiticity, unit trace and positivity; throws PhysicalityError.
    static ThreeQubitState from_matrix(const DensityMatrix& m);
    static ThreeQubitState maximally_mixed();

    const DensityMatrix& matrix() const { return m_; }
    Complex operator()(int r, int c) const { return m_[8 * r + c]; }

private:
    explicit ThreeQubitState(const DensityMatrix& m) : m_(m) {}
    DensityMatrix m_{};
};

struct CorrelationDecomposition {
    /// Λ_{μνγ} at 16μ + 4ν + γ; index 0 is the identity, 1..3 are x, y, z.
    std::array<double, 64> lambda{};

    double at(int mu, int nu, int ga) const { return lambda[16 * mu + 4 * nu + ga]; }
    double& at(int mu, int nu, int ga) { return lambda[16 * mu + 4 * nu + ga]; }

    // Sub-blocks; i, j, k run over 0..2 for x, y, z.
    Vec3 bloch_a() const;   // l_i = Λ_{i00}
    Vec3 bloch_b() const;   // m_j = Λ_{0j0}
    Vec3 bloch_c() const;   // n_k = Λ_{00k}
    Mat3 theta() const;     // Θ_ij = Λ_{ij0}
    Mat3 phi() const;       // Φ_ik = Λ_{i0k}
    Mat3 omega() const;     // Ω_jk = Λ_{0jk}
    double t(int i, int j, int k) const { return at(i + 1, j + 1, k + 1); }
    Mat3x9 t_matrix() const;

    /// Λ with only Λ_000 = 1 and the tripartite block set (a T-state).
    static CorrelationDecomposition from_t_matrix(const Mat3x9& t);
};

CorrelationDecomposition decompose(const ThreeQubitState& state);
/// Same for a raw matrix; checks Hermiticity and trace (not positivity).
CorrelationDecomposition decompose(const DensityMatrix& m);

struct Reconstruction {
    DensityMatrix matrix{};
    double min_eigenvalue = 0.0;
    bool is_physical = false;
    /// Throws PhysicalityError when !is_physical.
    ThreeQubitState state() const;
};

/// Requires Λ_000 = 1 (1e-12); flags, but does not reject, negative spectra.
Reconstruction reconstruct(const CorrelationDecomposition& d);

}  // namespace bellbound
