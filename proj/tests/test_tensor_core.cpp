#include <gtest/gtest.h>

#include "support.hpp"

using namespace bellbound;
using namespace support;

namespace {

// Λ by 64 dense traces, independent of the library's index tricks.
std::array<double, 64> dense_lambda(const DensityMatrix& rho) {
    std::array<double, 64> l{};
    const CMat d = dense(rho);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                const CMat p = kron(kron(pauli(a), pauli(b)), pauli(c));
                l[16 * a + 4 * b + c] = (p * d).trace().real();
            }
    return l;
}

double max_entry_diff(const DensityMatrix& a, const DensityMatrix& b) {
    double m = 0.0;
    for (int i = 0; i < 64; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST(Decompose, MaximallyMixed) {
    const auto d = decompose(ThreeQubitState::maximally_mixed());
    EXPECT_DOUBLE_EQ(d.at(0, 0, 0), 1.0);
    for (int i = 1; i < 64; ++i) EXPECT_NEAR(d.lambda[i], 0.0, 1e-15) << i;
}

TEST(Decompose, Ghz) {
    const auto d = ghz();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                double want = 0.0;
                if (i == 0 && j == 0 && k == 0) want = 1.0;
                if ((i == 0 && j == 1 && k == 1) || (i == 1 && j == 0 && k == 1) || (i == 1 && j == 1 && k == 0))
                    want = -1.0;
                EXPECT_NEAR(d.t(i, j, k), want, 1e-15) << i << j << k;
            }
    for (const Mat3& m : {d.theta(), d.phi(), d.omega()})
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) EXPECT_NEAR(m[i][j], (i == 2 && j == 2) ? 1.0 : 0.0, 1e-15);
    for (const Vec3& v : {d.bloch_a(), d.bloch_b(), d.bloch_c()})
        for (double x : v) EXPECT_NEAR(x, 0.0, 1e-15);
}

TEST(Decompose, ProductZeroState) {
    DensityMatrix m{};
    m[0] = 1.0;
    const auto d = decompose(ThreeQubitState::from_matrix(m));
    for (const Vec3& v : {d.bloch_a(), d.bloch_b(), d.bloch_c()}) {
        EXPECT_NEAR(v[0], 0.0, 1e-15);
        EXPECT_NEAR(v[1], 0.0, 1e-15);
        EXPECT_NEAR(v[2], 1.0, 1e-15);
    }
    const Mat3x9 t = d.t_matrix();
    for (int i = 0; i < 3; ++i)
        for (int c = 0; c < 9; ++c) EXPECT_NEAR(t[i][c], (i == 2 && c == 8) ? 1.0 : 0.0, 1e-15);
}

TEST(Decompose, MatchesDenseTraces) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto rho = states::build(states::StateSpec::random(seed));
        const auto want = dense_lambda(rho.matrix());
        const auto got = decompose(rho);
        for (int i = 0; i < 64; ++i) EXPECT_NEAR(got.lambda[i], want[i], 1e-12);
    }
}

TEST(Decompose, TMatrixFlattening) {
    const auto d = decompose(states::build(states::StateSpec::random(3)));
    const Mat3x9 t = d.t_matrix();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) EXPECT_EQ(t[i][3 * j + k], d.at(i + 1, j + 1, k + 1));
}

TEST(Decompose, RejectsNonHermitian) {
    DensityMatrix m = states::build(states::StateSpec::ghz()).matrix();
    m[1] += Complex(1e-6, 0);
    try {
        decompose(m);
        FAIL();
    } catch (const PhysicalityError& e) {
        EXPECT_EQ(e.invariant(), "hermitian");
    }
}

TEST(Decompose, RejectsWrongTrace) {
    DensityMatrix m = states::build(states::StateSpec::ghz()).matrix();
    m[0] += 1e-6;
    try {
        decompose(m);
        FAIL();
    } catch (const PhysicalityError& e) {
        EXPECT_EQ(e.invariant(), "unit_trace");
    }
}

TEST(ThreeQubitState, RejectsNegativeSpectrum) {
    DensityMatrix m{};
    m[0] = 1.5;
    m[9] = -0.5;
    try {
        ThreeQubitState::from_matrix(m);
        FAIL();
    } catch (const PhysicalityError& e) {
        EXPECT_EQ(e.invariant(), "positive_semidefinite");
    }
}

TEST(Reconstruct, IdentityCoefficients) {
    CorrelationDecomposition d;
    d.at(0, 0, 0) = 1.0;
    const Reconstruction r = reconstruct(d);
    EXPECT_TRUE(r.is_physical);
    EXPECT_LT(max_entry_diff(r.matrix, ThreeQubitState::maximally_mixed().matrix()), 1e-15);
}

TEST(Reconstruct, GhzRoundTrip) {
    const auto rho = states::build(states::StateSpec::ghz());
    const Reconstruction r = reconstruct(decompose(rho));
    EXPECT_TRUE(r.is_physical);
    EXPECT_LT(max_entry_diff(r.matrix, rho.matrix()), 1e-12);
}

TEST(Reconstruct, DiagonalTStateFlagsSpectrum) {
    Mat3x9 t{};
    t[0][0] = t[1][4] = t[2][8] = 1.0;
    const Reconstruction r = reconstruct(CorrelationDecomposition::from_t_matrix(t));
    const CMat m = dense(r.matrix);
    EXPECT_LT((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(m.trace().real(), 1.0, 1e-15);
    const double oracle = Eigen::SelfAdjointEigenSolver<CMat>(m).eigenvalues().minCoeff();
    EXPECT_NEAR(r.min_eigenvalue, oracle, 1e-10);
    // XXX, YYY, ZZZ pairwise anticommute, so their sum squares to 3
    EXPECT_NEAR(oracle, (1 - std::sqrt(3.0)) / 8, 1e-12);
    EXPECT_FALSE(r.is_physical);
    EXPECT_THROW(r.state(), PhysicalityError);
}

TEST(Reconstruct, RequiresUnitLambda000) {
    CorrelationDecomposition d;
    d.at(0, 0, 0) = 0.5;
    EXPECT_THROW(reconstruct(d), PhysicalityError);
}

TEST(TensorCoreProperties, RoundTripOnRandomStates) {
    for (std::uint64_t seed = 100; seed < 200; ++seed) {
        const auto rho = states::build(states::StateSpec::random(seed));
        EXPECT_LT(max_entry_diff(reconstruct(decompose(rho)).matrix, rho.matrix()), 1e-12) << seed;
    }
}

TEST(TensorCoreProperties, CoefficientsBounded) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto d = decompose(states::build(states::StateSpec::random(seed)));
        for (double x : d.lambda) EXPECT_LE(std::abs(x), 1 + 1e-12);
    }
}

TEST(TensorCoreProperties, LocalUnitaryKeepsSingularValues) {
    std::mt19937_64 g(42);
    for (int n = 0; n < 50; ++n) {
        const auto rho = states::build(states::StateSpec::random(g()));
        const auto rot = states::apply_local(rho, states::random_unitary(g), states::random_unitary(g),
                                             states::random_unitary(g));
        const Vec3 a = singular_values_3x9(decompose(rho).t_matrix()).values;
        const Vec3 b = singular_values_3x9(decompose(rot).t_matrix()).values;
        for (int i = 0; i < 3; ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
    }
}
