#pragma once

// Closed-form Mermin bounds for unbiased measurements of given strengths on
// arbitrary states, and for arbitrary measurements on T-states.

#include <array>

#include "bellbound/bounds.hpp"
#include "bellbound/state.hpp"

namespace bellbound::mermin {

inline constexpr double kClassical = 2.0;

struct Coefficients {
    double a = 0, b = 0, c = 0, d = 0;
};

Coefficients v_coefficients(const StrengthSextuple& r);

/// The 3×9 strength/angle matrix whose singular values pair with those of T.
/// Only rows 0-1 and columns (0,0),(0,1),(1,0),(1,1) in (j,k) are nonzero.
Mat3x9 build_v_matrix(const StrengthSextuple& r, const Angles& a);

/// I± = s1(V) ± s2(V) from the closed form.
PlusMinus i_plus_minus(const StrengthSextuple& r, const Angles& a);
/// The exchange-symmetric variant with moduli on the cosine terms.
PlusMinus i_tilde_plus_minus(const StrengthSextuple& r, const Angles& a);

/// ½(s1+s2)I₊ + ½(s1−s2)I₋ at the given angles.
BoundReport unbiased(const Mat3x9& t, const StrengthSextuple& r, const Angles& a);

/// 2 R_X R_Y R_Z √(s1² + s2²), with a representative optimal angle triple.
BoundReport equal_strengths(const Mat3x9& t, double rx, double ry, double rz);

/// Unbiased bound at orthogonal angles; violated when > 2.
CriterionResult sufficient_orthogonal(const Mat3x9& t, const StrengthSextuple& r);

/// Exchange-symmetric criterion built from Ĩ±; violated when > 2.
CriterionResult six_variant(const Mat3x9& t, const StrengthSextuple& r, const Angles& a);

/// Bias-only part of the operator on a T-state.
double k_value(const std::array<double, 6>& biases);
/// max |K| over biases with |B_i| ≤ 1 − R_i.
double k_max(const StrengthSextuple& r);
/// The min/max closed form; agrees with k_max when strengths are equal per side.
double k_max_min_max_form(const StrengthSextuple& r);

/// unbiased + k_max.
BoundReport tstate(const Mat3x9& t, const StrengthSextuple& r, const Angles& a);
/// As above; throws IncompatibleError unless `d` is a T-state (1e-10).
BoundReport tstate(const CorrelationDecomposition& d, const StrengthSextuple& r, const Angles& a);

/// Strength window where only biased measurements violate, for
/// P = √(s1² + s2²) > 1 and equal strengths R everywhere.
Window biased_window(double p);

/// R_Y = R_Y', R_Z = R_Z', R_X ≥ R_X'. Throws IncompatibleError when rx < rxp.
BoundReport x_asymmetric(const Mat3x9& t, double rx, double rxp, double ry, double rz, bool tstate);

/// s1 = s2 = s_max: s_max √(I0 + 2Γ0) (+ k_max).
BoundReport degenerate_smax(const StrengthSextuple& r, double s_max, bool tstate);

}  // namespace bellbound::mermin
