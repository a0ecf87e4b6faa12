#include "bellbound/mermin.hpp"

#include <numbers>
#include <string>

#include "bellbound/states.hpp"

namespace bellbound::mermin {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

// Records the closed form at the reported angles when it misses the bound.
void mark_attained(BoundReport& rep, double attained) {
    if (std::abs(attained - rep.bound_value) > 1e-9 * std::max(1.0, rep.bound_value)) rep.attained_value = attained;
}

}  // namespace

Coefficients v_coefficients(const StrengthSextuple& r) {
    const double xyzp = r.rx * r.ry * r.rzp, xypz = r.rx * r.ryp * r.rz;
    const double xpyz = r.rxp * r.ry * r.rz, xpypzp = r.rxp * r.ryp * r.rzp;
    return {xyzp + xypz + xpyz - xpypzp, -xyzp + xypz + xpyz + xpypzp, xyzp + xypz - xpyz + xpypzp,
            xyzp - xypz + xpyz + xpypzp};
}

Mat3x9 build_v_matrix(const StrengthSextuple& r, const Angles& a) {
    a.validate();
    const auto [A, B, C, D] = v_coefficients(r);
    const double cx = std::cos(a.x / 2), sx = std::sin(a.x / 2);
    const double cy = std::cos(a.y / 2), sy = std::sin(a.y / 2);
    const double cz = std::cos(a.z / 2), sz = std::sin(a.z / 2);
    Mat3x9 v{};
    v[0][0] = A * cx * cy * cz;
    v[0][1] = B * cx * cy * sz;
    v[1][0] = C * sx * cy * cz;
    v[1][1] = -D * sx * cy * sz;
    v[0][3] = D * cx * sy * cz;
    v[0][4] = -C * cx * sy * sz;
    v[1][3] = -B * sx * sy * cz;
    v[1][4] = -A * sx * sy * sz;
    return v;
}

PlusMinus i_plus_minus(const StrengthSextuple& r, const Angles& a) {
    a.validate();
    const StrengthInvariants s(r);
    const double cx = std::cos(a.x), cy = std::cos(a.y), cz = std::cos(a.z);
    const double base = s.i0 + 2 * (s.i_xy_z * cx * cy + s.i_xz_y * cx * cz + s.i_yz_x * cy * cz);
    const double pm = 2 * s.rx_rxp * std::sin(a.x) * clamped_sqrt(s.inner(a.y, a.z), "I± inner");
    return {clamped_sqrt(base + pm, "I+²"), clamped_sqrt(base - pm, "I-²")};
}

PlusMinus i_tilde_plus_minus(const StrengthSextuple& r, const Angles& a) {
    a.validate();
    const StrengthInvariants s(r);
    const double cx = std::cos(a.x), cy = std::cos(a.y), cz = std::cos(a.z);
    const double base = s.i0 + 2 * (std::abs(s.i_xy_z * cx * cy) + std::abs(s.i_xz_y * cx * cz) +
                                     std::abs(s.i_yz_x * cy * cz));
    const double pm = 2 * s.rx_rxp * std::sin(a.x) * clamped_sqrt(s.inner(a.y, a.z, true), "Ĩ± inner");
    return {clamped_sqrt(base + pm, "Ĩ+²"), clamped_sqrt(base - pm, "Ĩ-²")};
}

BoundReport unbiased(const Mat3x9& t, const StrengthSextuple& r, const Angles& a) {
    BoundReport rep;
    rep.criterion = "mermin_unbiased";
    rep.bound_value = pair_bound(singular_values_3x9(t).values, i_plus_minus(r, a));
    rep.achieving_angles = a;
    return rep;
}

BoundReport equal_strengths(const Mat3x9& t, double rx, double ry, double rz) {
    const StrengthSextuple r = StrengthSextuple::per_side(rx, ry, rz);
    const Vec3 s = singular_values_3x9(t).values;
    const double p2 = s[0] * s[0] + s[1] * s[1];
    BoundReport rep;
    rep.criterion = "mermin_equal_strengths";
    rep.bound_value = 2 * rx * ry * rz * std::sqrt(p2);
    // any triple with sinθx √(1 − cos²θy cos²θz) = 2 s1 s2 / (s1² + s2²) works
    const double rhs = p2 > 0 ? std::min(1.0, 2 * s[0] * s[1] / p2) : 1.0;
    rep.achieving_angles = Angles{std::asin(rhs), kHalfPi, kHalfPi};
    rep.note = "angle family is degenerate; representative with theta_y = theta_z = pi/2";
    mark_attained(rep, pair_bound(s, i_plus_minus(r, *rep.achieving_angles)));
    return rep;
}

CriterionResult sufficient_orthogonal(const Mat3x9& t, const StrengthSextuple& r) {
    const Vec3 s = singular_values_3x9(t).values;
    const double v = r.rx * std::sqrt(r.ry * r.ry * r.rzp * r.rzp + r.ryp * r.ryp * r.rz * r.rz) * s[0] +
                     r.rxp * std::sqrt(r.ry * r.ry * r.rz * r.rz + r.ryp * r.ryp * r.rzp * r.rzp) * s[1];
    return {v, v > kClassical};
}

CriterionResult six_variant(const Mat3x9& t, const StrengthSextuple& r, const Angles& a) {
    const double v = pair_bound(singular_values_3x9(t).values, i_tilde_plus_minus(r, a));
    return {v, v > kClassical};
}

double k_value(const std::array<double, 6>& b) {
    const auto [bx, bxp, by, byp, bz, bzp] = b;
    return bx * (by * bzp + byp * bz) + bxp * (by * bz - byp * bzp);
}

double k_max(const StrengthSextuple& r) {
    // K is multilinear, so biases sit at ±(1 − R); one relative sign per pair survives.
    const double x = 1 - r.rx, xp = 1 - r.rxp, y = 1 - r.ry, yp = 1 - r.ryp, z = 1 - r.rz, zp = 1 - r.rzp;
    const double a = y * zp, b = yp * z, c = y * z, d = yp * zp;
    return std::max(x * (a + b) + xp * std::abs(c - d), x * std::abs(a - b) + xp * (c + d));
}

double k_max_min_max_form(const StrengthSextuple& r) {
    auto lo = [](double u, double v) { return 1 - std::max(u, v); };
    auto hi = [](double u, double v) { return 1 - std::min(u, v); };
    const double rX = lo(r.rx, r.rxp), rY = lo(r.ry, r.ryp), rZ = lo(r.rz, r.rzp);
    const double lX = hi(r.rx, r.rxp), lY = hi(r.ry, r.ryp), lZ = hi(r.rz, r.rzp);
    return (2 - r.rx - r.rxp) * (2 - r.ry - r.ryp) * (2 - r.rz - r.rzp) - rX * (rY * lZ + lY * rZ) -
           lX * (rY * rZ + lY * lZ) - 2 * rX * rY * rZ;
}

BoundReport tstate(const Mat3x9& t, const StrengthSextuple& r, const Angles& a) {
    BoundReport rep = unbiased(t, r, a);
    rep.criterion = "mermin_tstate";
    rep.bound_value += k_max(r);
    return rep;
}

BoundReport tstate(const CorrelationDecomposition& d, const StrengthSextuple& r, const Angles& a) {
    if (!states::is_tstate(d))
        throw IncompatibleError("mermin_tstate requires a T-state (vanishing local and bipartite blocks)");
    return tstate(d.t_matrix(), r, a);
}

Window biased_window(double p) {
    if (!(p > 1.0))
        throw IncompatibleError("biased-only Mermin window needs P = sqrt(s1^2 + s2^2) > 1, got " + std::to_string(p));
    return {std::cbrt(1.0 / p), (-3.0 + std::sqrt(3.0) * std::sqrt(4 * p - 1)) / (2 * (p - 1))};
}

BoundReport x_asymmetric(const Mat3x9& t, double rx, double rxp, double ry, double rz, bool tstate) {
    if (rx < rxp) throw IncompatibleError("mermin_x_asymmetric requires rx >= rxp");
    const StrengthSextuple r(rx, rxp, ry, ry, rz, rz);
    const Vec3 s = singular_values_3x9(t).values;
    const double den = rx * rx * s[0] * s[0] + rxp * rxp * s[1] * s[1];
    BoundReport rep;
    rep.criterion = tstate ? "mermin_x_asymmetric_tstate" : "mermin_x_asymmetric";
    rep.bound_value = 2 * ry * rz * std::sqrt(den);
    // the proof fixes θ_yz with cosθ_y cosθ_z = cosθ_yz and sinθ_yz = rhs
    const double rhs = den > 0 ? std::min(1.0, 2 * rx * rxp * s[0] * s[1] / den) : 0.0;
    const auto [ty, tz] = split_cos_product(std::sqrt(1 - rhs * rhs));
    rep.achieving_angles = Angles{kHalfPi, ty, tz};
    double attained = pair_bound(s, i_plus_minus(r, *rep.achieving_angles));
    if (tstate) {
        const double k = k_max(r);
        rep.bound_value += k;
        attained += k;
        rep.note = "bias term is k_max = 2(1-rxp)(1-ry)(1-rz) for rx >= rxp";
    }
    mark_attained(rep, attained);
    return rep;
}

BoundReport degenerate_smax(const StrengthSextuple& r, double s_max, bool tstate) {
    const StrengthInvariants inv(r);
    const double y2 = r.ry * r.ry, yp2 = r.ryp * r.ryp, z2 = r.rz * r.rz, zp2 = r.rzp * r.rzp;
    const double gamma0 = inv.rx_rxp * std::sqrt(y2 * yp2 * (z2 * z2 + zp2 * zp2) + z2 * zp2 * (y2 * y2 + yp2 * yp2));
    BoundReport rep;
    rep.criterion = tstate ? "mermin_degenerate_smax_tstate" : "mermin_degenerate_smax";
    rep.bound_value = s_max * std::sqrt(inv.i0 + 2 * gamma0);
    const double tx = std::atan2(r.rz * r.rzp * (y2 + yp2), r.ry * r.ryp * std::abs(z2 - zp2));
    rep.achieving_angles = Angles{tx, r.rz >= r.rzp ? 0.0 : std::numbers::pi, kHalfPi};
    double attained = s_max * i_plus_minus(r, *rep.achieving_angles).plus;
    if (tstate) {
        const double k = k_max(r);
        rep.bound_value += k;
        attained += k;
    }
    mark_attained(rep, attained);
    return rep;
}

}  // namespace bellbound::mermin
