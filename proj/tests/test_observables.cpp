#include <gtest/gtest.h>

#include <numbers>

#include "support.hpp"

using namespace bellbound;
using namespace support;

namespace {

CorrelationDecomposition random_state(std::uint64_t seed) {
    return decompose(states::build(states::StateSpec::random(seed)));
}

GeneralObservable trivial(double b) { return {b, 0.0, Vec3{0, 0, 1}}; }

}  // namespace

TEST(GeneralObservable, Validation) {
    EXPECT_NO_THROW(GeneralObservable(0.3, 0.7, Vec3{1, 0, 0}));
    EXPECT_THROW(GeneralObservable(0.4, 0.7, Vec3{1, 0, 0}), std::invalid_argument);
    EXPECT_THROW(GeneralObservable(0.0, -0.1, Vec3{1, 0, 0}), std::invalid_argument);
    EXPECT_THROW(GeneralObservable(0.0, 1.0, Vec3{1, 1, 0}), std::invalid_argument);
    EXPECT_THROW(GeneralObservable(-0.5, 0.6, Vec3{0, 0, 1}), std::invalid_argument);
}

TEST(StrengthSextuple, Validation) {
    EXPECT_THROW(StrengthSextuple(1.1, 1, 1, 1, 1, 1), std::invalid_argument);
    EXPECT_THROW(StrengthSextuple(1, 1, 1, 1, 1, -0.01), std::invalid_argument);
    EXPECT_TRUE(StrengthSextuple::per_side(0.2, 0.3, 0.4).equal_per_side());
    EXPECT_FALSE(StrengthSextuple(1, 0.9, 1, 1, 1, 1).equal_per_side());
}

TEST(Angles, Validation) {
    EXPECT_NO_THROW((Angles{0, std::numbers::pi, 1}.validate()));
    EXPECT_THROW((Angles{-0.1, 0, 0}.validate()), std::invalid_argument);
    EXPECT_THROW((Angles{0, 0, 3.2}.validate()), std::invalid_argument);
}

TEST(MeasurementSetting, InPlaneReproducesAngles) {
    std::mt19937_64 g(1);
    for (int n = 0; n < 100; ++n) {
        const Angles a = random_angles(g);
        const StrengthSextuple r = random_strengths(g);
        const MeasurementSetting s = MeasurementSetting::in_plane(r, a);
        const Angles back = s.angles();
        EXPECT_NEAR(back.x, a.x, 1e-7);
        EXPECT_NEAR(back.y, a.y, 1e-7);
        EXPECT_NEAR(back.z, a.z, 1e-7);
        EXPECT_EQ(s.strengths().as_array(), r.as_array());
    }
}

TEST(TripleExpectation, TrivialObservablesGiveBiasProduct) {
    const CorrelationDecomposition d = random_state(3);
    EXPECT_NEAR(triple_expectation(d, trivial(0.3), trivial(-0.7), trivial(0.9)), 0.3 * -0.7 * 0.9, 1e-15);
}

TEST(TripleExpectation, GhzAlongX) {
    const Vec3 ex{1, 0, 0};
    EXPECT_NEAR(triple_expectation(ghz(), GeneralObservable::sharp(ex), GeneralObservable::sharp(ex),
                                   GeneralObservable::sharp(ex)),
                1.0, 1e-12);
}

TEST(TripleExpectation, MaximallyMixedUnbiasedIsZero) {
    const CorrelationDecomposition d = decompose(ThreeQubitState::maximally_mixed());
    std::mt19937_64 g(4);
    for (int n = 0; n < 20; ++n) {
        const MeasurementSetting s = random_unbiased_setting(g, random_strengths(g));
        EXPECT_EQ(triple_expectation(d, s.x, s.y, s.z), 0.0);
        EXPECT_EQ(mermin_expectation(d, s), 0.0);
        EXPECT_EQ(svetlichny_expectation(d, s), 0.0);
    }
}

TEST(TripleExpectation, MatchesDenseTrace) {
    std::mt19937_64 g(5);
    for (int n = 0; n < 200; ++n) {
        const ThreeQubitState st = states::build(states::StateSpec::random(1000 + n));
        const CorrelationDecomposition d = decompose(st);
        const GeneralObservable x = random_observable(g), y = random_observable(g), z = random_observable(g);
        const double v = triple_expectation(d, x, y, z);
        EXPECT_NEAR(v, dense_triple(st.matrix(), x, y, z), 1e-12);
        EXPECT_LE(std::abs(v), 1.0 + 1e-12);
    }
}

TEST(MerminExpectation, MatchesDenseCombination) {
    std::mt19937_64 g(6);
    for (int n = 0; n < 50; ++n) {
        const ThreeQubitState st = states::build(states::StateSpec::random(2000 + n));
        const CorrelationDecomposition d = decompose(st);
        const MeasurementSetting s = random_setting(g);
        const auto& m = st.matrix();
        const double mermin = dense_triple(m, s.x, s.y, s.zp) + dense_triple(m, s.x, s.yp, s.z) +
                              dense_triple(m, s.xp, s.y, s.z) - dense_triple(m, s.xp, s.yp, s.zp);
        const double primed = dense_triple(m, s.xp, s.yp, s.z) + dense_triple(m, s.xp, s.y, s.zp) +
                              dense_triple(m, s.x, s.yp, s.zp) - dense_triple(m, s.x, s.y, s.z);
        EXPECT_NEAR(mermin_expectation(d, s), mermin, 1e-12);
        EXPECT_NEAR(svetlichny_expectation(d, s), mermin - primed, 1e-12);
        EXPECT_EQ(operator_expectation(d, s, OperatorKind::mermin), mermin_expectation(d, s));
        EXPECT_EQ(operator_expectation(d, s, OperatorKind::svetlichny), svetlichny_expectation(d, s));
    }
}

// unbiased: x·T(y⊗z) summed with the operator's signs
TEST(MerminExpectation, UnbiasedTensorForm) {
    std::mt19937_64 g(7);
    for (int n = 0; n < 50; ++n) {
        const CorrelationDecomposition d = random_state(3000 + n);
        const MeasurementSetting s = random_unbiased_setting(g, random_strengths(g));
        auto t = [&](const GeneralObservable& a, const GeneralObservable& b, const GeneralObservable& c) {
            double sum = 0.0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k)
                        sum += d.t(i, j, k) * a.direction()[i] * b.direction()[j] * c.direction()[k];
            return a.strength() * b.strength() * c.strength() * sum;
        };
        const double m = t(s.x, s.y, s.zp) + t(s.x, s.yp, s.z) + t(s.xp, s.y, s.z) - t(s.xp, s.yp, s.zp);
        EXPECT_NEAR(mermin_expectation(d, s), m, 1e-12);
    }
}

TEST(MerminExpectation, GhzStandardSetting) {
    const Vec3 ex{1, 0, 0}, ey{0, 1, 0};
    const auto sx = GeneralObservable::sharp(ex), sy = GeneralObservable::sharp(ey);
    // X = Y = Z = σy, primes σx: three ⟨σyσyσx⟩-type terms at −1 and ⟨σxσxσx⟩ = 1
    const MeasurementSetting s{sy, sx, sy, sx, sy, sx};
    EXPECT_NEAR(std::abs(mermin_expectation(ghz(), s)), 4.0, 1e-9);
}

TEST(MerminExpectation, BiasOnlyLimits) {
    std::mt19937_64 g(8);
    for (int n = 0; n < 50; ++n) {
        const CorrelationDecomposition d = random_state(4000 + n);
        std::array<double, 6> b{};
        for (double& v : b) v = uniform(g, -1, 1);
        const MeasurementSetting s{trivial(b[0]), trivial(b[1]), trivial(b[2]),
                                   trivial(b[3]), trivial(b[4]), trivial(b[5])};
        EXPECT_NEAR(mermin_expectation(d, s), mermin::k_value(b), 1e-14);
        EXPECT_NEAR(svetlichny_expectation(d, s), svetlichny::l_value(b), 1e-14);
        const auto [bx, bxp, by, byp, bz, bzp] = b;
        EXPECT_NEAR(mermin::k_value(b), bx * (by * bzp + byp * bz) + bxp * (by * bz - byp * bzp), 1e-15);
        EXPECT_NEAR(svetlichny::l_value(b),
                    (bx * by - bxp * byp) * (bz + bzp) + (bx * byp + bxp * by) * (bz - bzp), 1e-15);
    }
}

TEST(Exchange, SwapsFlaggedParties) {
    std::mt19937_64 g(9);
    const MeasurementSetting s = random_setting(g);
    const MeasurementSetting e = exchange(s, 0b101);
    EXPECT_EQ(e.x.direction(), s.xp.direction());
    EXPECT_EQ(e.xp.direction(), s.x.direction());
    EXPECT_EQ(e.y.direction(), s.y.direction());
    EXPECT_EQ(e.z.bias(), s.zp.bias());
    EXPECT_EQ(e.zp.strength(), s.z.strength());
}

TEST(VariantExpectations, SymmetricSettingAllEqual) {
    std::mt19937_64 g(10);
    const GeneralObservable x = random_observable(g), y = random_observable(g), z = random_observable(g);
    const MeasurementSetting s{x, x, y, y, z, z};
    const CorrelationDecomposition d = random_state(11);
    for (OperatorKind k : {OperatorKind::mermin, OperatorKind::svetlichny}) {
        const auto v = variant_expectations(d, s, k);
        for (double e : v) EXPECT_NEAR(e, v[0], 1e-14);
        EXPECT_NEAR(v[0], operator_expectation(d, s, k), 1e-14);
    }
}

TEST(VariantExpectations, MaximallyMixedGivesZeros) {
    std::mt19937_64 g(12);
    const MeasurementSetting s = random_unbiased_setting(g, random_strengths(g));
    for (double e : variant_expectations(decompose(ThreeQubitState::maximally_mixed()), s, OperatorKind::mermin))
        EXPECT_EQ(e, 0.0);
}

TEST(VariantExpectations, PatternsMatchExplicitExchange) {
    std::mt19937_64 g(13);
    const CorrelationDecomposition d = random_state(14);
    const MeasurementSetting s = random_setting(g);
    const auto v = variant_expectations(d, s, OperatorKind::svetlichny);
    for (unsigned p = 0; p < 8; ++p) EXPECT_EQ(v[p], svetlichny_expectation(d, exchange(s, p)));
}

// eight patterns give eight distinct operators, not six
TEST(VariantExpectations, EightPatternsAreDistinct) {
    std::mt19937_64 g(15);
    const CorrelationDecomposition d = random_state(16);
    const MeasurementSetting s = random_unbiased_setting(g, random_strengths(g));
    const auto v = variant_expectations(d, s, OperatorKind::mermin);
    for (int p = 0; p < 8; ++p)
        for (int q = p + 1; q < 8; ++q) {
            EXPECT_GT(std::abs(v[p] - v[q]), 1e-9);
            EXPECT_GT(std::abs(v[p] + v[q]), 1e-9);
        }
}

TEST(Expectations, LocalUnitaryCovariance) {
    std::mt19937_64 g(17);
    for (int n = 0; n < 30; ++n) {
        const ThreeQubitState st = states::build(states::StateSpec::random(5000 + n));
        const auto ua = states::random_unitary(g), ub = states::random_unitary(g), uc = states::random_unitary(g);
        const CorrelationDecomposition d0 = decompose(st);
        const CorrelationDecomposition d1 = decompose(states::apply_local(st, ua, ub, uc));
        const Mat3 ra = states::bloch_rotation(ua), rb = states::bloch_rotation(ub), rc = states::bloch_rotation(uc);
        const MeasurementSetting s = random_setting(g);
        auto rot = [](const Mat3& r, const GeneralObservable& o) {
            return GeneralObservable(o.bias(), o.strength(), multiply(r, o.direction()));
        };
        const MeasurementSetting s1{rot(ra, s.x), rot(ra, s.xp), rot(rb, s.y), rot(rb, s.yp), rot(rc, s.z), rot(rc, s.zp)};
        EXPECT_NEAR(mermin_expectation(d0, s), mermin_expectation(d1, s1), 1e-10);
        EXPECT_NEAR(svetlichny_expectation(d0, s), svetlichny_expectation(d1, s1), 1e-10);
    }
}
