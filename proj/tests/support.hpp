#pragma once

// Dense Eigen reference implementations and random draws shared by the tests.

#include <Eigen/Dense>

#include <complex>
#include <random>

#include "bellbound/bellbound.hpp"

namespace support {

using namespace bellbound;
using CMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>;
using C2 = Eigen::Matrix2cd;

inline C2 pauli(int mu) {
    const std::complex<double> i(0, 1);
    C2 m;
    switch (mu) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -i, i, 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

inline CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

inline CMat dense(const DensityMatrix& m) {
    CMat d(8, 8);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) d(r, c) = m[8 * r + c];
    return d;
}

inline DensityMatrix from_dense(const CMat& d) {
    DensityMatrix m{};
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) m[8 * r + c] = d(r, c);
    return m;
}

/// B·1 + R·σ·n, built literally.
inline CMat observable(const GeneralObservable& o) {
    CMat m = o.bias() * pauli(0);
    for (int k = 0; k < 3; ++k) m += o.strength() * o.direction()[k] * pauli(k + 1);
    return m;
}

inline double dense_triple(const DensityMatrix& rho, const GeneralObservable& x, const GeneralObservable& y,
                           const GeneralObservable& z) {
    return (kron(kron(observable(x), observable(y)), observable(z)) * dense(rho)).trace().real();
}

inline Eigen::MatrixXd eigen_matrix(const Mat3x9& t) {
    Eigen::MatrixXd m(3, 9);
    for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 9; ++c) m(i, c) = t[i][c];
    return m;
}

inline Eigen::Vector3d eigen_singular_values(const Mat3x9& t) {
    return Eigen::JacobiSVD<Eigen::MatrixXd>(eigen_matrix(t)).singularValues();
}

inline double uniform(std::mt19937_64& g, double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * states::uniform01(g);
}

inline Vec3 random_unit(std::mt19937_64& g) {
    Vec3 v{states::gaussian(g), states::gaussian(g), states::gaussian(g)};
    return (1.0 / norm(v)) * v;
}

inline StrengthSextuple random_strengths(std::mt19937_64& g) {
    return {uniform(g), uniform(g), uniform(g), uniform(g), uniform(g), uniform(g)};
}

inline Angles random_angles(std::mt19937_64& g) {
    const double pi = 3.14159265358979323846;
    return {uniform(g, 0, pi), uniform(g, 0, pi), uniform(g, 0, pi)};
}

inline Mat3x9 random_tensor(std::mt19937_64& g) {
    Mat3x9 t{};
    for (auto& row : t)
        for (double& x : row) x = states::gaussian(g);
    return t;
}

/// Unbiased setting with the given strengths and random directions.
inline MeasurementSetting random_unbiased_setting(std::mt19937_64& g, const StrengthSextuple& r) {
    return {GeneralObservable(0, r.rx, random_unit(g)),  GeneralObservable(0, r.rxp, random_unit(g)),
            GeneralObservable(0, r.ry, random_unit(g)),  GeneralObservable(0, r.ryp, random_unit(g)),
            GeneralObservable(0, r.rz, random_unit(g)),  GeneralObservable(0, r.rzp, random_unit(g))};
}

/// Valid observable with a random bias inside the allowed range.
inline GeneralObservable random_observable(std::mt19937_64& g) {
    const double r = uniform(g);
    const double b = uniform(g, -(1 - r), 1 - r);
    return {b, r, random_unit(g)};
}

inline MeasurementSetting random_setting(std::mt19937_64& g) {
    return {random_observable(g), random_observable(g), random_observable(g),
            random_observable(g), random_observable(g), random_observable(g)};
}

inline CorrelationDecomposition ghz() { return decompose(states::build(states::StateSpec::ghz())); }

inline Mat3x9 ghz_t() { return ghz().t_matrix(); }

inline Mat3x9 scaled(Mat3x9 t, double f) {
    for (auto& row : t)
        for (double& x : row) x *= f;
    return t;
}

inline Mat3 random_orthogonal(std::mt19937_64& g) {
    Mat3 m{};
    for (auto& row : m)
        for (double& x : row) x = states::gaussian(g);
    return polar_factor(m);
}

// GHZ correlations with the x and y rows weighted separately, then locally rotated.
// Singular vectors keep the product form the equal-strength bounds need.
inline Mat3x9 alignable_tensor(std::mt19937_64& g, double wx, double wy) {
    Mat3x9 t = ghz_t();
    for (double& x : t[0]) x *= wx;
    for (double& x : t[1]) x *= wy;
    for (double& x : t[2]) x = 0;
    return multiply(random_orthogonal(g), multiply(t, bellbound::kron(random_orthogonal(g), random_orthogonal(g))));
}

}  // namespace support
