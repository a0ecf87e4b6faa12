#include "bellbound/linalg.hpp"

#include <string>

namespace bellbound {

Mat3 transpose(const Mat3& a) {
    Mat3 out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[i][j] = a[j][i];
    return out;
}

Mat3 multiply(const Mat3& a, const Mat3& b) {
    Mat3 out{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

Vec3 multiply(const Mat3& a, const Vec3& v) { return {dot(a[0], v), dot(a[1], v), dot(a[2], v)}; }

Mat3 identity3() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

SquareMatrix<9> kron(const Mat3& a, const Mat3& b) {
    SquareMatrix<9> out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) out[3 * i + k][3 * j + l] = a[i][j] * b[k][l];
    return out;
}

Mat3x9 multiply(const Mat3x9& a, const SquareMatrix<9>& k) {
    Mat3x9 out{};
    for (int i = 0; i < 3; ++i)
        for (int m = 0; m < 9; ++m)
            for (int j = 0; j < 9; ++j) out[i][j] += a[i][m] * k[m][j];
    return out;
}

Mat3x9 multiply(const Mat3& a, const Mat3x9& b) {
    Mat3x9 out{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 9; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

double max_abs_diff(const Mat3x9& a, const Mat3x9& b) {
    double m = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 9; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
    return m;
}

double frobenius_sq(const Mat3x9& a) {
    double s = 0.0;
    for (const auto& row : a)
        for (double x : row) s += x * x;
    return s;
}

Eigen3Result eigen_sym3(const Mat3& a) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < i; ++j)
            if (std::abs(a[i][j] - a[j][i]) > 1e-12)
                throw std::invalid_argument("eigen_sym3: matrix is not symmetric (entry " + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
    SquareMatrix<3> m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = 0.5 * (a[i][j] + a[j][i]);
    const auto e = jacobi_eigen<3>(m);
    Eigen3Result out;
    out.values = e.values;
    out.vectors = e.vectors;
    out.sweeps = e.sweeps;
    return out;
}

namespace {

template <std::size_t N>
double dotn(const std::array<double, N>& a, const std::array<double, N>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
    return s;
}

// Gram–Schmidt the candidate against the first `count` columns; false if it
// collapses.
template <std::size_t N, std::size_t M>
bool orthonormalize_against(std::array<double, N>& v, const std::array<std::array<double, N>, M>& basis,
                            std::size_t count) {
    for (int pass = 0; pass < 2; ++pass)
        for (std::size_t b = 0; b < count; ++b) {
            const double c = dotn(v, basis[b]);
            for (std::size_t i = 0; i < N; ++i) v[i] -= c * basis[b][i];
        }
    const double n = std::sqrt(dotn(v, v));
    if (n < 1e-8) return false;
    for (auto& x : v) x /= n;
    return true;
}

template <std::size_t N, std::size_t M>
void complete_basis(std::array<std::array<double, N>, M>& basis, std::size_t from) {
    std::size_t axis = 0;
    for (std::size_t b = from; b < M; ++b) {
        while (axis < N) {
            std::array<double, N> cand{};
            cand[axis++] = 1.0;
            if (orthonormalize_against(cand, basis, b)) {
                basis[b] = cand;
                break;
            }
        }
    }
}

}  // namespace

SingularTriple singular_values_3x9(const Mat3x9& a) {
    SquareMatrix<3> g{};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) g[i][j] = g[j][i] = dotn(a[i], a[j]);
    const auto e = jacobi_eigen<3>(g);

    // ‖Aᵀu‖ is accurate to ε‖A‖ even where sqrt(λ) is not, so use it as the value.
    std::array<std::pair<double, Vec9>, 3> cols{};
    std::array<Vec3, 3> lefts = e.vectors;
    for (int i = 0; i < 3; ++i) {
        Vec9 v{};
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 9; ++c) v[c] += a[r][c] * lefts[i][r];
        cols[i] = {std::sqrt(dotn(v, v)), v};
    }
    std::array<int, 3> order{0, 1, 2};
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return cols[x].first > cols[y].first; });

    SingularTriple out;
    std::size_t found = 0;
    for (int i = 0; i < 3; ++i) {
        auto [s, v] = cols[order[i]];
        out.left[i] = lefts[order[i]];
        if (s < kSingularZero || found < static_cast<std::size_t>(i)) continue;
        if (!orthonormalize_against(v, out.right, found)) continue;
        out.values[i] = s;
        out.right[i] = v;
        found = i + 1;
    }
    complete_basis(out.right, found);
    return out;
}

Svd3 svd3(const Mat3& a) {
    SquareMatrix<3> g{};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += a[k][i] * a[k][j];
            g[i][j] = g[j][i] = s;
        }
    const auto e = jacobi_eigen<3>(g);

    std::array<Vec3, 3> us{};
    std::array<Vec3, 3> vs = e.vectors;
    Svd3 out;
    std::size_t found = 0;
    for (int i = 0; i < 3; ++i) {
        Vec3 u = multiply(a, vs[i]);
        const double n = norm(u);
        if (found < static_cast<std::size_t>(i) || n < 1e-13 * std::max(1.0, out.s[0])) continue;
        out.s[i] = n;
        if (!orthonormalize_against(u, us, found)) continue;
        us[i] = u;
        found = i + 1;
    }
    complete_basis(us, found);
    for (int i = 0; i < 3; ++i)
        for (int r = 0; r < 3; ++r) {
            out.u[r][i] = us[i][r];
            out.v[r][i] = vs[i][r];
        }
    return out;
}

Mat3 polar_factor(const Mat3& a) {
    const Svd3 d = svd3(a);
    return multiply(d.u, transpose(d.v));
}

std::pair<Vec3, Vec3> procrustes_pair(const Vec3& p, const Vec3& q, const Vec3& current1, const Vec3& current2) {
    // [p q] = Σ σ_i a_i w_iᵀ; the maximiser is U = Σ a_i w_iᵀ.
    SquareMatrix<2> g{};
    g[0][0] = dot(p, p);
    g[0][1] = g[1][0] = dot(p, q);
    g[1][1] = dot(q, q);
    const auto e = jacobi_eigen<2>(g);
    const double s1 = std::sqrt(std::max(e.values[0], 0.0));
    if (s1 < 1e-14) return {current1, current2};
    const auto& w1 = e.vectors[0];
    const auto& w2 = e.vectors[1];
    const Vec3 a1 = (1.0 / s1) * (w1[0] * p + w1[1] * q);

    Vec3 a2 = w2[0] * p + w2[1] * q;
    const double s2 = norm(a2);
    if (s2 > 1e-12 * s1) {
        a2 = (1.0 / s2) * a2;
        a2 = a2 - dot(a2, a1) * a1;
        a2 = (1.0 / norm(a2)) * a2;
    } else {
        // rank one: any a2 ⟂ a1 is optimal; stay near the current pair
        a2 = w2[0] * current1 + w2[1] * current2;
        a2 = a2 - dot(a2, a1) * a1;
        double n = norm(a2);
        if (n < 1e-8) {
            const Vec3 axis = std::abs(a1[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
            a2 = cross(a1, axis);
            n = norm(a2);
        }
        a2 = (1.0 / n) * a2;
    }
    return {w1[0] * a1 + w2[0] * a2, w1[1] * a1 + w2[1] * a2};
}

}  // namespace bellbound
