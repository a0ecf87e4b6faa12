#include "bellbound/observables.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace bellbound {

StrengthSextuple::StrengthSextuple(double rx_, double rxp_, double ry_, double ryp_, double rz_, double rzp_)
    : rx(rx_), rxp(rxp_), ry(ry_), ryp(ryp_), rz(rz_), rzp(rzp_) {
    static constexpr const char* names[] = {"rx", "rxp", "ry", "ryp", "rz", "rzp"};
    const auto v = as_array();
    for (int i = 0; i < 6; ++i)
        if (!(v[i] >= 0.0 && v[i] <= 1.0))
            throw std::invalid_argument(std::string("strength ") + names[i] + " = " + std::to_string(v[i]) +
                                        " outside [0, 1]");
}

bool StrengthSextuple::equal_per_side(double tol) const {
    return std::abs(rx - rxp) <= tol && std::abs(ry - ryp) <= tol && std::abs(rz - rzp) <= tol;
}

Angles Angles::orthogonal() {
    constexpr double h = std::numbers::pi / 2;
    return {h, h, h};
}

void Angles::validate() const {
    for (double a : {x, y, z})
        if (!(a >= -1e-12 && a <= std::numbers::pi + 1e-12))
            throw std::invalid_argument("relative angle " + std::to_string(a) + " outside [0, pi]");
}

GeneralObservable::GeneralObservable(double bias, double strength, const Vec3& direction)
    : bias_(bias), strength_(strength), dir_(direction) {
    if (!(strength >= 0.0)) throw std::invalid_argument("observable strength must be non-negative");
    if (!(strength + std::abs(bias) <= 1.0 + kObservableTol))
        throw std::invalid_argument("observable violates R + |B| <= 1 (R = " + std::to_string(strength) +
                                    ", B = " + std::to_string(bias) + ")");
    if (!(std::abs(norm(direction) - 1.0) <= kObservableTol))
        throw std::invalid_argument("observable direction is not a unit vector");
}

std::array<double, 4> GeneralObservable::pauli_vector() const {
    return {bias_, strength_ * dir_[0], strength_ * dir_[1], strength_ * dir_[2]};
}

namespace {

double relative_angle(const Vec3& a, const Vec3& b) { return std::acos(std::clamp(dot(a, b), -1.0, 1.0)); }

}  // namespace

Angles MeasurementSetting::angles() const {
    return {relative_angle(x.direction(), xp.direction()), relative_angle(y.direction(), yp.direction()),
            relative_angle(z.direction(), zp.direction())};
}

StrengthSextuple MeasurementSetting::strengths() const {
    return {x.strength(), xp.strength(), y.strength(), yp.strength(), z.strength(), zp.strength()};
}

std::array<double, 6> MeasurementSetting::biases() const {
    return {x.bias(), xp.bias(), y.bias(), yp.bias(), z.bias(), zp.bias()};
}

MeasurementSetting MeasurementSetting::in_plane(const StrengthSextuple& r, const Angles& a) {
    auto pair = [](double theta) {
        const double c = std::cos(theta / 2), s = std::sin(theta / 2);
        return std::pair<Vec3, Vec3>{Vec3{c, s, 0.0}, Vec3{c, -s, 0.0}};
    };
    const auto [x, xp] = pair(a.x);
    const auto [y, yp] = pair(a.y);
    const auto [z, zp] = pair(a.z);
    return {GeneralObservable(0, r.rx, x),  GeneralObservable(0, r.rxp, xp), GeneralObservable(0, r.ry, y),
            GeneralObservable(0, r.ryp, yp), GeneralObservable(0, r.rz, z),  GeneralObservable(0, r.rzp, zp)};
}

std::string_view to_string(OperatorKind k) { return k == OperatorKind::mermin ? "mermin" : "svetlichny"; }

double triple_expectation(const CorrelationDecomposition& d, const GeneralObservable& xo, const GeneralObservable& yo,
                          const GeneralObservable& zo) {
    const double bx = xo.bias(), by = yo.bias(), bz = zo.bias();
    const double rx = xo.strength(), ry = yo.strength(), rz = zo.strength();
    const Vec3& x = xo.direction();
    const Vec3& y = yo.direction();
    const Vec3& z = zo.direction();

    double xty = 0, xpz = 0, yoz = 0, xtyz = 0;
    const Mat3 th = d.theta(), ph = d.phi(), om = d.omega();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            xty += x[i] * th[i][j] * y[j];
            xpz += x[i] * ph[i][j] * z[j];
            yoz += y[i] * om[i][j] * z[j];
            for (int k = 0; k < 3; ++k) xtyz += x[i] * d.t(i, j, k) * y[j] * z[k];
        }

    return bx * by * bz + by * bz * rx * dot(d.bloch_a(), x) + bx * bz * ry * dot(d.bloch_b(), y) +
           bx * by * rz * dot(d.bloch_c(), z) + bz * rx * ry * xty + by * rx * rz * xpz + bx * ry * rz * yoz +
           rx * ry * rz * xtyz;
}

double mermin_expectation(const CorrelationDecomposition& d, const MeasurementSetting& s) {
    return triple_expectation(d, s.x, s.y, s.zp) + triple_expectation(d, s.x, s.yp, s.z) +
           triple_expectation(d, s.xp, s.y, s.z) - triple_expectation(d, s.xp, s.yp, s.zp);
}

double svetlichny_expectation(const CorrelationDecomposition& d, const MeasurementSetting& s) {
    const double e_prime = triple_expectation(d, s.xp, s.yp, s.z) + triple_expectation(d, s.xp, s.y, s.zp) +
                           triple_expectation(d, s.x, s.yp, s.zp) - triple_expectation(d, s.x, s.y, s.z);
    return mermin_expectation(d, s) - e_prime;
}

double operator_expectation(const CorrelationDecomposition& d, const MeasurementSetting& s, OperatorKind k) {
    return k == OperatorKind::mermin ? mermin_expectation(d, s) : svetlichny_expectation(d, s);
}

MeasurementSetting exchange(const MeasurementSetting& s, unsigned pattern) {
    MeasurementSetting out = s;
    if (pattern & 1u) std::swap(out.x, out.xp);
    if (pattern & 2u) std::swap(out.y, out.yp);
    if (pattern & 4u) std::swap(out.z, out.zp);
    return out;
}

std::array<double, 8> variant_expectations(const CorrelationDecomposition& d, const MeasurementSetting& s,
                                           OperatorKind k) {
    std::array<double, 8> out{};
    for (unsigned p = 0; p < 8; ++p) out[p] = operator_expectation(d, exchange(s, p), k);
    return out;
}

}  // namespace bellbound
