#pragma once

// Dichotomic qubit observables B·1 + R·σ·n and the Mermin / Svetlichny
// expectations they produce on a decomposed three-qubit state.

#include <array>
#include <string_view>

#include "bellbound/linalg.hpp"
#include "bellbound/state.hpp"

namespace bellbound {

inline constexpr double kObservableTol = 1e-12;

/// Strengths in the order X, X', Y, Y', Z, Z'. Each must lie in [0, 1].
struct StrengthSextuple {
    double rx = 1, rxp = 1, ry = 1, ryp = 1, rz = 1, rzp = 1;

    StrengthSextuple() = default;
    StrengthSextuple(double rx, double rxp, double ry, double ryp, double rz, double rzp);
    static StrengthSextuple uniform(double r) { return {r, r, r, r, r, r}; }
    static StrengthSextuple per_side(double rx, double ry, double rz) { return {rx, rx, ry, ry, rz, rz}; }

    std::array<double, 6> as_array() const { return {rx, rxp, ry, ryp, rz, rzp}; }
    bool equal_per_side(double tol = 0.0) const;
};

/// Relative angles between each party's two directions, all in [0, π].
struct Angles {
    double x = 0, y = 0, z = 0;
    static Angles orthogonal();
    /// Throws std::invalid_argument outside [0, π] (1e-12 slack).
    void validate() const;
};

class GeneralObservable {
public:
    /// Throws std::invalid_argument when R < 0, R + |B| > 1 or ‖n‖ ≠ 1 (1e-12).
    GeneralObservable(double bias, double strength, const Vec3& direction);
    static GeneralObservable sharp(const Vec3& direction) { return {0.0, 1.0, direction}; }

    double bias() const { return bias_; }
    double strength() const { return strength_; }
    const Vec3& direction() const { return dir_; }
    /// (B, R n_x, R n_y, R n_z), the observable's Pauli coefficients.
    std::array<double, 4> pauli_vector() const;

private:
    double bias_;
    double strength_;
    Vec3 dir_;
};

struct MeasurementSetting {
    GeneralObservable x, xp, y, yp, z, zp;

    /// Recomputed from the directions; dot products clamped before acos.
    Angles angles() const;
    StrengthSextuple strengths() const;
    std::array<double, 6> biases() const;

    /// Directions u = cos(θ/2) e1 + sin(θ/2) e2, u' = cos(θ/2) e1 − sin(θ/2) e2
    /// in the e1/e2 plane of each party (default: the x/y plane).
    static MeasurementSetting in_plane(const StrengthSextuple& r, const Angles& a);
};

enum class OperatorKind { mermin, svetlichny };
std::string_view to_string(OperatorKind k);

/// ⟨X⊗Y⊗Z⟩ by the eight-term expansion in biases, strengths and the
/// Pauli blocks of the state.
double triple_expectation(const CorrelationDecomposition& d, const GeneralObservable& x, const GeneralObservable& y,
                          const GeneralObservable& z);

/// ⟨XYZ'⟩ + ⟨XY'Z⟩ + ⟨X'YZ⟩ − ⟨X'Y'Z'⟩ (signed; the Mermin value is its modulus).
double mermin_expectation(const CorrelationDecomposition& d, const MeasurementSetting& s);
/// ⟨E − E'⟩ with E' = X'Y'Z + X'YZ' + XY'Z' − XYZ (signed).
double svetlichny_expectation(const CorrelationDecomposition& d, const MeasurementSetting& s);
double operator_expectation(const CorrelationDecomposition& d, const MeasurementSetting& s, OperatorKind k);

/// Swaps primed/unprimed observables on the parties flagged in `pattern`
/// (bit 0 = X side, bit 1 = Y, bit 2 = Z).
MeasurementSetting exchange(const MeasurementSetting& s, unsigned pattern);

/// The operator evaluated under all eight exchange patterns, pattern order.
std::array<double, 8> variant_expectations(const CorrelationDecomposition& d, const MeasurementSetting& s,
                                           OperatorKind k);

}  // namespace bellbound
