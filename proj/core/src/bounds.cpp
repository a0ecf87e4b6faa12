#include "bellbound/bounds.hpp"

#include <string>

namespace bellbound {

double clamped_sqrt(double x, const char* what) {
    if (x >= 0.0) return std::sqrt(x);
    if (x >= -kRadicandClamp) return 0.0;
    throw ConsistencyError(std::string(what) + " radicand evaluated to " + std::to_string(x));
}

bool top_pair_degenerate(const Vec3& s) { return std::abs(s[0] - s[1]) <= 1e-9 * std::max(1.0, s[0]); }

StrengthInvariants::StrengthInvariants(const StrengthSextuple& r) {
    const double x2 = r.rx * r.rx, xp2 = r.rxp * r.rxp;
    const double y2 = r.ry * r.ry, yp2 = r.ryp * r.ryp;
    const double z2 = r.rz * r.rz, zp2 = r.rzp * r.rzp;
    rx_rxp = r.rx * r.rxp;
    const double ryy = r.ry * r.ryp, rzz = r.rz * r.rzp;

    i0 = x2 * (y2 * zp2 + yp2 * z2) + xp2 * (y2 * z2 + yp2 * zp2);
    i_xy_z = rx_rxp * ryy * (z2 - zp2);
    i_xz_y = rx_rxp * rzz * (y2 - yp2);
    i_yz_x = ryy * rzz * (x2 - xp2);
    i0_yz = y2 * yp2 * (z2 * z2 + zp2 * zp2);
    i0_zy = z2 * zp2 * (y2 * y2 + yp2 * yp2);
    i1 = ryy * rzz;

    j0 = (x2 + xp2) * (y2 + yp2) * (z2 + zp2);
    j_yz_x = rx_rxp * (y2 - yp2) * (z2 - zp2);
    j_xz_y = ryy * (x2 - xp2) * (z2 - zp2);
    j_xy_z = rzz * (x2 - xp2) * (y2 - yp2);
}

double StrengthInvariants::inner(double theta_y, double theta_z, bool abs_cos) const {
    const double sy = std::sin(theta_y), sz = std::sin(theta_z);
    double c = std::cos(2 * theta_y) * std::cos(2 * theta_z);
    if (abs_cos) c = std::abs(c);
    return i0_yz * sy * sy + i0_zy * sz * sz + i1 * i1 * (1.0 - c);
}

}  // namespace bellbound
