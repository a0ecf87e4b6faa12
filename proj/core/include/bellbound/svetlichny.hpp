#pragma once

// Closed-form Svetlichny bounds; mirrors mermin.hpp with W in place of V.

#include <array>
#include <string_view>

#include "bellbound/bounds.hpp"
#include "bellbound/state.hpp"

namespace bellbound::svetlichny {

inline constexpr double kClassical = 4.0;

struct SvetlichnyCoefficients {
    double a_plus = 0, a_minus = 0, b_plus = 0, b_minus = 0;
    double c_plus = 0, c_minus = 0, d_plus = 0, d_minus = 0;
};

SvetlichnyCoefficients w_coefficients(const StrengthSextuple& r);

Mat3x9 build_w_matrix(const StrengthSextuple& r, const Angles& a);

/// J± = s1(W) ± s2(W) from the closed form.
PlusMinus j_plus_minus(const StrengthSextuple& r, const Angles& a);
PlusMinus j_tilde_plus_minus(const StrengthSextuple& r, const Angles& a);

BoundReport unbiased(const Mat3x9& t, const StrengthSextuple& r, const Angles& a);

/// 2√2 R_X R_Y R_Z √(s1² + s2²).
BoundReport equal_strengths(const Mat3x9& t, double rx, double ry, double rz);

/// Orthogonal-angle value from the j± radicals; violated when > 4.
CriterionResult sufficient_orthogonal(const Mat3x9& t, const StrengthSextuple& r);

CriterionResult six_variant(const Mat3x9& t, const StrengthSextuple& r, const Angles& a);

double l_value(const std::array<double, 6>& biases);
/// max |L| over biases with |B_i| ≤ 1 − R_i.
double l_max(const StrengthSextuple& r);
/// The closed form with |2 − R_Z − R_Z'| and |R_Z' − R_Z|; agrees with l_max
/// when strengths are equal per side.
double l_max_min_max_form(const StrengthSextuple& r);

BoundReport tstate(const Mat3x9& t, const StrengthSextuple& r, const Angles& a);
BoundReport tstate(const CorrelationDecomposition& d, const StrengthSextuple& r, const Angles& a);

/// Needs P > √2.
Window biased_window(double p);

enum class Branch { orthogonal, mixed, parallel };
std::string_view to_string(Branch b);

/// R_Y = R_Y', R_Z = R_Z', R_X ≥ R_X'. `parallel` additionally needs
/// s1(T) = s2(T); otherwise IncompatibleError.
BoundReport x_asymmetric(const Mat3x9& t, double rx, double rxp, double ry, double rz, Branch branch, bool tstate);
/// Largest of the branches that apply to t (not a result in its own right).
BoundReport x_asymmetric_best(const Mat3x9& t, double rx, double rxp, double ry, double rz, bool tstate);

/// s1 = s2 = s_max, sinθ_x = 0: s_max √(J0 + 2Γ1) (+ l_max).
BoundReport degenerate_smax(const StrengthSextuple& r, double s_max, bool tstate);

}  // namespace bellbound::svetlichny
