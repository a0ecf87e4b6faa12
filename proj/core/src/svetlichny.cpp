#include "bellbound/svetlichny.hpp"

#include <numbers>
#include <string>
#include <vector>

#include "bellbound/states.hpp"

namespace bellbound::svetlichny {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kPi = std::numbers::pi;

void mark_attained(BoundReport& rep, double attained) {
    if (std::abs(attained - rep.bound_value) > 1e-9 * std::max(1.0, rep.bound_value)) rep.attained_value = attained;
}

double sign_angle(double v) { return v >= 0 ? 0.0 : kPi; }

}  // namespace

SvetlichnyCoefficients w_coefficients(const StrengthSextuple& r) {
    const double p = r.rz + r.rzp, m = r.rz - r.rzp;
    const double xy_m = r.rx * r.ry - r.rxp * r.ryp, xy_p = r.rx * r.ry + r.rxp * r.ryp;
    const double xyp_p = r.rx * r.ryp + r.rxp * r.ry, xyp_m = r.rx * r.ryp - r.rxp * r.ry;
    SvetlichnyCoefficients c;
    c.a_plus = xy_m * p + xyp_p * m;
    c.a_minus = xy_m * p - xyp_p * m;
    c.b_plus = xyp_p * p + xy_m * m;
    c.b_minus = xyp_p * p - xy_m * m;
    c.c_plus = xy_p * p + xyp_m * m;
    c.c_minus = xy_p * p - xyp_m * m;
    c.d_plus = xyp_m * p + xy_p * m;
    c.d_minus = xyp_m * p - xy_p * m;
    return c;
}

Mat3x9 build_w_matrix(const StrengthSextuple& r, const Angles& a) {
    a.validate();
    const SvetlichnyCoefficients k = w_coefficients(r);
    const double cx = std::cos(a.x / 2), sx = std::sin(a.x / 2);
    const double cy = std::cos(a.y / 2), sy = std::sin(a.y / 2);
    const double cz = std::cos(a.z / 2), sz = std::sin(a.z / 2);
    Mat3x9 w{};
    w[0][0] = k.a_plus * cx * cy * cz;
    w[0][1] = k.b_plus * cx * cy * sz;
    w[1][0] = k.c_plus * sx * cy * cz;
    w[1][1] = k.d_plus * sx * cy * sz;
    w[0][3] = k.c_minus * cx * sy * cz;
    w[0][4] = -k.d_minus * cx * sy * sz;
    w[1][3] = k.a_minus * sx * sy * cz;
    w[1][4] = -k.b_minus * sx * sy * sz;
    return w;
}

PlusMinus j_plus_minus(const StrengthSextuple& r, const Angles& a) {
    a.validate();
    const StrengthInvariants s(r);
    const double cx = std::cos(a.x), cy = std::cos(a.y), cz = std::cos(a.z);
    const double base =
        s.j0 + 2 * (s.j_yz_x * cx + s.j_xz_y * cy + s.j_xy_z * cz - 4 * s.rx_rxp * s.i1 * cx * cy * cz);
    const double pm = 4 * s.rx_rxp * std::sin(a.x) * clamped_sqrt(s.inner(a.y, a.z), "J± inner");
    return {clamped_sqrt(base + pm, "J+²"), clamped_sqrt(base - pm, "J-²")};
}

PlusMinus j_tilde_plus_minus(const StrengthSextuple& r, const Angles& a) {
    a.validate();
    const StrengthInvariants s(r);
    const double cx = std::cos(a.x), cy = std::cos(a.y), cz = std::cos(a.z);
    const double base = s.j0 + 2 * (std::abs(s.j_yz_x * cx) + std::abs(s.j_xz_y * cy) + std::abs(s.j_xy_z * cz) -
                                    4 * s.rx_rxp * s.i1 * std::abs(cx * cy * cz));
    const double pm = 4 * s.rx_rxp * std::sin(a.x) * clamped_sqrt(s.inner(a.y, a.z, true), "J̃± inner");
    return {clamped_sqrt(base + pm, "J̃+²"), clamped_sqrt(base - pm, "J̃-²")};
}

BoundReport unbiased(const Mat3x9& t, const StrengthSextuple& r, const Angles& a) {
    BoundReport rep;
    rep.criterion = "svetlichny_unbiased";
    rep.bound_value = pair_bound(singular_values_3x9(t).values, j_plus_minus(r, a));
    rep.achieving_angles = a;
    return rep;
}

BoundReport equal_strengths(const Mat3x9& t, double rx, double ry, double rz) {
    const StrengthSextuple r = StrengthSextuple::per_side(rx, ry, rz);
    const Vec3 s = singular_values_3x9(t).values;
    const double p2 = s[0] * s[0] + s[1] * s[1];
    BoundReport rep;
    rep.criterion = "svetlichny_equal_strengths";
    rep.bound_value = 2 * std::numbers::sqrt2 * rx * ry * rz * std::sqrt(p2);
    if (p2 == 0.0 || top_pair_degenerate(s)) {
        rep.achieving_angles = Angles::orthogonal();
    } else {
        // two families give this value: θ_x = π/2 with cosθ_y cosθ_z = (s1² − s2²)/(s1² + s2²), or
        // sinθ_x = 2 s1 s2/(s1² + s2²) with cosθ_y cosθ_z = 0. Only the second is reached by actual
        // observables on product-aligned tensors, so return a member of it
        rep.achieving_angles = Angles{std::acos((s[0] * s[0] - s[1] * s[1]) / p2), kHalfPi, kHalfPi};
    }
    rep.note = "angle family is degenerate; representative returned";
    mark_attained(rep, pair_bound(s, j_plus_minus(r, *rep.achieving_angles)));
    return rep;
}

CriterionResult sufficient_orthogonal(const Mat3x9& t, const StrengthSextuple& r) {
    const Vec3 s = singular_values_3x9(t).values;
    const StrengthInvariants inv(r);
    const double y2 = r.ry * r.ry, yp2 = r.ryp * r.ryp, z2 = r.rz * r.rz, zp2 = r.rzp * r.rzp;
    const double root = 4 * inv.rx_rxp * std::sqrt((y2 * zp2 + yp2 * z2) * (y2 * z2 + yp2 * zp2));
    const double jp = std::sqrt(inv.j0 + root);
    const double jm = clamped_sqrt(inv.j0 - root, "j-²");
    const double v = 0.5 * (jp + jm) * s[0] + 0.5 * (jp - jm) * s[1];
    return {v, v > kClassical};
}

CriterionResult six_variant(const Mat3x9& t, const StrengthSextuple& r, const Angles& a) {
    const double v = pair_bound(singular_values_3x9(t).values, j_tilde_plus_minus(r, a));
    return {v, v > kClassical};
}

double l_value(const std::array<double, 6>& b) {
    const auto [bx, bxp, by, byp, bz, bzp] = b;
    return (bx * by - bxp * byp) * (bz + bzp) + (bx * byp + bxp * by) * (bz - bzp);
}

double l_max(const StrengthSextuple& r) {
    const double x = 1 - r.rx, xp = 1 - r.rxp, y = 1 - r.ry, yp = 1 - r.ryp, z = 1 - r.rz, zp = 1 - r.rzp;
    const double p = x * y, q = xp * yp, u = x * yp, v = xp * y;
    double best = 0.0;
    for (double rho : {1.0, -1.0})
        for (double nu : {1.0, -1.0})
            best = std::max(best, std::abs(p - rho * q) * std::abs(z + nu * zp) + std::abs(u + rho * v) * std::abs(z - nu * zp));
    return best;
}

double l_max_min_max_form(const StrengthSextuple& r) {
    return ((1 - r.rx) * (1 - r.ryp) + (1 - r.rxp) * (1 - r.ry)) * std::abs(2 - r.rz - r.rzp) +
           ((1 - r.rx) * (1 - r.ry) - (1 - r.rxp) * (1 - r.ryp)) * std::abs(r.rzp - r.rz);
}

BoundReport tstate(const Mat3x9& t, const StrengthSextuple& r, const Angles& a) {
    BoundReport rep = unbiased(t, r, a);
    rep.criterion = "svetlichny_tstate";
    rep.bound_value += l_max(r);
    return rep;
}

BoundReport tstate(const CorrelationDecomposition& d, const StrengthSextuple& r, const Angles& a) {
    if (!states::is_tstate(d))
        throw IncompatibleError("svetlichny_tstate requires a T-state (vanishing local and bipartite blocks)");
    return tstate(d.t_matrix(), r, a);
}

Window biased_window(double p) {
    constexpr double r2 = std::numbers::sqrt2;
    if (!(p > r2))
        throw IncompatibleError("biased-only Svetlichny window needs P = sqrt(s1^2 + s2^2) > sqrt(2), got " +
                                std::to_string(p));
    return {std::cbrt(r2 / p), (-3.0 + std::sqrt(3.0) * std::sqrt(2 * r2 * p - 1)) / (r2 * (p - r2))};
}

std::string_view to_string(Branch b) {
    switch (b) {
        case Branch::orthogonal: return "orthogonal";
        case Branch::mixed: return "mixed";
        default: return "parallel";
    }
}

BoundReport x_asymmetric(const Mat3x9& t, double rx, double rxp, double ry, double rz, Branch branch, bool tstate) {
    if (rx < rxp) throw IncompatibleError("svetlichny_x_asymmetric requires rx >= rxp");
    const StrengthSextuple r(rx, rxp, ry, ry, rz, rz);
    const Vec3 s = singular_values_3x9(t).values;
    const double p2 = s[0] * s[0] + s[1] * s[1];
    const double rxx = std::hypot(rx, rxp);

    BoundReport rep;
    rep.criterion = std::string(tstate ? "svetlichny_x_asymmetric_tstate_" : "svetlichny_x_asymmetric_") +
                    std::string(to_string(branch));
    switch (branch) {
        case Branch::orthogonal:
            rep.bound_value = 2 * ry * rz * (rx * s[0] + rxp * s[1]);
            rep.achieving_angles = Angles::orthogonal();
            break;
        case Branch::mixed:
            rep.bound_value = 2 * ry * rz * rxx * std::sqrt(p2);
            // condition on the combined angle θ_yz (cosθ_y cosθ_z = cosθ_yz)
            if (p2 > 0) {
                const auto [ty, tz] = split_cos_product((s[0] * s[0] - s[1] * s[1]) / p2);
                rep.achieving_angles = Angles{kHalfPi, ty, tz};
            } else {
                rep.achieving_angles = Angles::orthogonal();
            }
            break;
        case Branch::parallel:
            if (!top_pair_degenerate(s))
                throw IncompatibleError("parallel branch needs a doubly degenerate largest singular value");
            rep.bound_value = 2 * std::numbers::sqrt2 * ry * rz * s[0] * rxx;
            if (rxx > 0) {
                const auto [ty, tz] = split_cos_product(-2 * rx * rxp / (rxx * rxx));
                rep.achieving_angles = Angles{0.0, ty, tz};
            } else {
                rep.achieving_angles = Angles{0.0, kHalfPi, kHalfPi};
            }
            break;
    }
    double attained = pair_bound(s, j_plus_minus(r, *rep.achieving_angles));
    if (tstate) {
        const double l = l_max(r);  // = 2(2 − rx − rxp)(1 − ry)(1 − rz) here
        rep.bound_value += l;
        attained += l;
    }
    mark_attained(rep, attained);
    return rep;
}

BoundReport x_asymmetric_best(const Mat3x9& t, double rx, double rxp, double ry, double rz, bool tstate) {
    BoundReport best = x_asymmetric(t, rx, rxp, ry, rz, Branch::orthogonal, tstate);
    std::vector<Branch> others{Branch::mixed};
    if (top_pair_degenerate(singular_values_3x9(t).values)) others.push_back(Branch::parallel);
    for (Branch b : others) {
        BoundReport rep = x_asymmetric(t, rx, rxp, ry, rz, b, tstate);
        if (rep.bound_value > best.bound_value) best = rep;
    }
    best.note = "max over applicable branches (" + best.criterion + ")";
    best.criterion = tstate ? "svetlichny_x_asymmetric_tstate" : "svetlichny_x_asymmetric";
    return best;
}

BoundReport degenerate_smax(const StrengthSextuple& r, double s_max, bool tstate) {
    const StrengthInvariants inv(r);
    const double gamma1 = std::abs(inv.j_yz_x) + std::abs(inv.j_xz_y) + std::abs(inv.j_xy_z) + 4 * inv.rx_rxp * inv.i1;
    BoundReport rep;
    rep.criterion = tstate ? "svetlichny_degenerate_smax_tstate" : "svetlichny_degenerate_smax";
    rep.bound_value = s_max * std::sqrt(inv.j0 + 2 * gamma1);
    const double dx = r.rx - r.rxp, dy = r.ry - r.ryp, dz = r.rz - r.rzp;
    rep.achieving_angles = Angles{sign_angle(dy * dz), sign_angle(dx * dz), sign_angle(dx * dy)};
    double attained = s_max * j_plus_minus(r, *rep.achieving_angles).plus;
    if (tstate) {
        const double l = l_max(r);
        rep.bound_value += l;
        attained += l;
    }
    mark_attained(rep, attained);
    return rep;
}

}  // namespace bellbound::svetlichny
