#include "bellbound/state.hpp"

#include <sstream>

namespace bellbound {

namespace {

// Every Pauli matrix has one nonzero per row: σ_μ[r][col(r)] = phase(r).
struct PauliRow {
    int col;
    Complex phase;
};

constexpr Complex kI{0.0, 1.0};

PauliRow pauli_row(int mu, int r) {
    switch (mu) {
        case 0: return {r, 1.0};
        case 1: return {1 - r, 1.0};
        case 2: return {1 - r, r == 0 ? -kI : kI};
        default: return {r, r == 0 ? 1.0 : -1.0};
    }
}

// Row r of σ_μ⊗σ_ν⊗σ_γ.
PauliRow product_row(int mu, int nu, int ga, int r) {
    const PauliRow a = pauli_row(mu, (r >> 2) & 1);
    const PauliRow b = pauli_row(nu, (r >> 1) & 1);
    const PauliRow c = pauli_row(ga, r & 1);
    return {(a.col << 2) | (b.col << 1) | c.col, a.phase * b.phase * c.phase};
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

void check_hermitian_and_trace(const DensityMatrix& m) {
    const double herm = hermitian_defect(m);
    if (herm > kHermitianTol) throw PhysicalityError("hermitian", "max |ρ − ρ†| = " + fmt(herm));
    const double tr = std::abs(trace(m) - 1.0);
    if (tr > kTraceTol) throw PhysicalityError("unit_trace", "|Tr ρ − 1| = " + fmt(tr));
}

CorrelationDecomposition pauli_coefficients(const DensityMatrix& m) {
    CorrelationDecomposition d;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            for (int ga = 0; ga < 4; ++ga) {
                Complex acc = 0.0;
                for (int r = 0; r < 8; ++r) {
                    const PauliRow p = product_row(mu, nu, ga, r);
                    acc += p.phase * m[8 * p.col + r];
                }
                d.at(mu, nu, ga) = acc.real();
            }
    return d;
}

}  // namespace

double hermitian_defect(const DensityMatrix& m) {
    double d = 0.0;
    for (int r = 0; r < 8; ++r)
        for (int c = r; c < 8; ++c) d = std::max(d, std::abs(m[8 * r + c] - std::conj(m[8 * c + r])));
    return d;
}

Complex trace(const DensityMatrix& m) {
    Complex t = 0.0;
    for (int r = 0; r < 8; ++r) t += m[9 * r];
    return t;
}

double hermitian_min_eigenvalue(const DensityMatrix& m) {
    SquareMatrix<16> e{};
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
            // symmetrise so a slightly non-Hermitian input still gives a real spectrum
            const Complex h = 0.5 * (m[8 * r + c] + std::conj(m[8 * c + r]));
            e[r][c] = e[r + 8][c + 8] = h.real();
            e[r + 8][c] = h.imag();
            e[r][c + 8] = -h.imag();
        }
    const auto eig = jacobi_eigen<16>(e, 60);
    return eig.values[15];
}

ThreeQubitState ThreeQubitState::from_matrix(const DensityMatrix& m) {
    check_hermitian_and_trace(m);
    const double lo = hermitian_min_eigenvalue(m);
    if (lo < -kPsdTol) throw PhysicalityError("positive_semidefinite", "minimum eigenvalue " + fmt(lo));
    return ThreeQubitState(m);
}

ThreeQubitState ThreeQubitState::maximally_mixed() {
    DensityMatrix m{};
    for (int r = 0; r < 8; ++r) m[9 * r] = 0.125;
    return ThreeQubitState(m);
}

Vec3 CorrelationDecomposition::bloch_a() const { return {at(1, 0, 0), at(2, 0, 0), at(3, 0, 0)}; }
Vec3 CorrelationDecomposition::bloch_b() const { return {at(0, 1, 0), at(0, 2, 0), at(0, 3, 0)}; }
Vec3 CorrelationDecomposition::bloch_c() const { return {at(0, 0, 1), at(0, 0, 2), at(0, 0, 3)}; }

Mat3 CorrelationDecomposition::theta() const {
    Mat3 out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[i][j] = at(i + 1, j + 1, 0);
    return out;
}

Mat3 CorrelationDecomposition::phi() const {
    Mat3 out{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) out[i][k] = at(i + 1, 0, k + 1);
    return out;
}

Mat3 CorrelationDecomposition::omega() const {
    Mat3 out{};
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) out[j][k] = at(0, j + 1, k + 1);
    return out;
}

Mat3x9 CorrelationDecomposition::t_matrix() const {
    Mat3x9 out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) out[i][3 * j + k] = t(i, j, k);
    return out;
}

CorrelationDecomposition CorrelationDecomposition::from_t_matrix(const Mat3x9& t) {
    CorrelationDecomposition d;
    d.at(0, 0, 0) = 1.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) d.at(i + 1, j + 1, k + 1) = t[i][3 * j + k];
    return d;
}

CorrelationDecomposition decompose(const ThreeQubitState& state) { return pauli_coefficients(state.matrix()); }

CorrelationDecomposition decompose(const DensityMatrix& m) {
    check_hermitian_and_trace(m);
    return pauli_coefficients(m);
}

ThreeQubitState Reconstruction::state() const {
    if (!is_physical)
        throw PhysicalityError("positive_semidefinite", "minimum eigenvalue " + fmt(min_eigenvalue));
    return ThreeQubitState::from_matrix(matrix);
}

Reconstruction reconstruct(const CorrelationDecomposition& d) {
    if (std::abs(d.at(0, 0, 0) - 1.0) > kTraceTol)
        throw PhysicalityError("unit_trace", "Λ_000 = " + fmt(d.at(0, 0, 0)));
    Reconstruction out;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            for (int ga = 0; ga < 4; ++ga) {
                const double w = d.at(mu, nu, ga) / 8.0;
                if (w == 0.0) continue;
                for (int r = 0; r < 8; ++r) {
                    const PauliRow p = product_row(mu, nu, ga, r);
                    out.matrix[8 * r + p.col] += w * p.phase;
                }
            }
    out.min_eigenvalue = hermitian_min_eigenvalue(out.matrix);
    out.is_physical = out.min_eigenvalue >= -kPsdTol;
    return out;
}

}  // namespace bellbound
