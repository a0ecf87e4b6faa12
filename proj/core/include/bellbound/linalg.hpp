#pragma once

// Fixed-size dense kernels for the small matrices the bounds need: a cyclic
// Jacobi eigen-solver for real symmetric N×N matrices and the 3×9 singular
// value decomposition built on top of it.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace bellbound {

using Vec3 = std::array<double, 3>;
using Vec9 = std::array<double, 9>;
/// Row-major 3×3.
using Mat3 = std::array<Vec3, 3>;
/// Row-major 3×9. Column index of (j,k) is 3*j + k.
using Mat3x9 = std::array<Vec9, 3>;

template <std::size_t N>
using SquareMatrix = std::array<std::array<double, N>, N>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

Mat3 transpose(const Mat3& a);
Mat3 multiply(const Mat3& a, const Mat3& b);
Vec3 multiply(const Mat3& a, const Vec3& v);
Mat3 identity3();

/// Kronecker product (a ⊗ b) as a 9×9 matrix, row/column index 3*i + j.
SquareMatrix<9> kron(const Mat3& a, const Mat3& b);
/// a · k for a 3×9 `a` and 9×9 `k`.
Mat3x9 multiply(const Mat3x9& a, const SquareMatrix<9>& k);
Mat3x9 multiply(const Mat3& a, const Mat3x9& b);

double max_abs_diff(const Mat3x9& a, const Mat3x9& b);
double frobenius_sq(const Mat3x9& a);

template <std::size_t N>
struct SymmetricEigen {
    /// Non-increasing.
    std::array<double, N> values{};
    /// vectors[i] is the unit eigenvector for values[i].
    std::array<std::array<double, N>, N> vectors{};
    int sweeps = 0;
};

inline constexpr double kJacobiTolerance = 1e-14;
inline constexpr int kJacobiMaxSweeps = 30;

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// kJacobiTolerance·max(1, ‖A‖_F). Input is assumed symmetric; only the upper
/// triangle is read.
template <std::size_t N>
SymmetricEigen<N> jacobi_eigen(SquareMatrix<N> a, int max_sweeps = kJacobiMaxSweeps) {
    SquareMatrix<N> v{};
    for (std::size_t i = 0; i < N; ++i) {
        v[i][i] = 1.0;
        for (std::size_t j = 0; j < i; ++j) a[i][j] = a[j][i];
    }
    double scale = 0.0;
    for (const auto& row : a)
        for (double x : row) scale += x * x;
    const double threshold = kJacobiTolerance * std::max(1.0, std::sqrt(scale));

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < N; ++p)
            for (std::size_t q = p + 1; q < N; ++q) off += 2.0 * a[p][q] * a[p][q];
        if (std::sqrt(off) <= threshold) break;

        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const double apq = a[p][q];
                if (apq == 0.0) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < N; ++k) {
                    const double akp = a[k][p];
                    const double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const double apk = a[p][k];
                    const double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const double vkp = v[k][p];
                    const double vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::array<std::size_t, N> order{};
    for (std::size_t i = 0; i < N; ++i) order[i] = i;
    for (std::size_t i = 1; i < N; ++i)
        for (std::size_t j = i; j > 0 && a[order[j]][order[j]] > a[order[j - 1]][order[j - 1]]; --j)
            std::swap(order[j], order[j - 1]);

    SymmetricEigen<N> out;
    out.sweeps = sweep;
    for (std::size_t i = 0; i < N; ++i) {
        out.values[i] = a[order[i]][order[i]];
        for (std::size_t k = 0; k < N; ++k) out.vectors[i][k] = v[k][order[i]];
    }
    return out;
}

struct Eigen3Result {
    Vec3 values{};
    /// vectors[i] pairs with values[i].
    std::array<Vec3, 3> vectors{};
    int sweeps = 0;
};

/// Throws std::invalid_argument when ‖A − Aᵀ‖_max > 1e-12.
Eigen3Result eigen_sym3(const Mat3& a);

struct SingularTriple {
    /// s1 ≥ s2 ≥ s3 ≥ 0; entries below 1e-12 are exactly 0.
    Vec3 values{};
    std::array<Vec3, 3> left{};
    std::array<Vec9, 3> right{};
};

inline constexpr double kSingularZero = 1e-12;

SingularTriple singular_values_3x9(const Mat3x9& a);

/// Orthonormal (u1, u2) maximizing p·u1 + q·u2 (orthogonal Procrustes on the
/// 3×2 matrix [p q]). When [p q] is rank deficient the free direction is taken
/// from the current pair so repeated calls do not jump around; when it is zero
/// the current pair is returned unchanged.
std::pair<Vec3, Vec3> procrustes_pair(const Vec3& p, const Vec3& q, const Vec3& current1, const Vec3& current2);

struct Svd3 {
    Mat3 u{};  // columns are left vectors
    Vec3 s{};
    Mat3 v{};  // columns are right vectors
};

/// a = u · diag(s) · vᵀ with s non-increasing.
Svd3 svd3(const Mat3& a);

/// Orthogonal polar factor of a 3×3 matrix (nearest orthogonal matrix).
Mat3 polar_factor(const Mat3& a);

}  // namespace bellbound
