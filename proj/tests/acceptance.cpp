// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "bellbound/bellbound.hpp"

using namespace bellbound;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

double uniform(std::mt19937_64& g, double lo = 0, double hi = 1) { return lo + (hi - lo) * states::uniform01(g); }

StrengthSextuple random_strengths(std::mt19937_64& g) {
    return {uniform(g), uniform(g), uniform(g), uniform(g), uniform(g), uniform(g)};
}

Angles random_angles(std::mt19937_64& g) { return {uniform(g, 0, kPi), uniform(g, 0, kPi), uniform(g, 0, kPi)}; }

Vec3 random_unit(std::mt19937_64& g) {
    const Vec3 v{states::gaussian(g), states::gaussian(g), states::gaussian(g)};
    return (1.0 / norm(v)) * v;
}

Mat3x9 random_tensor(std::mt19937_64& g) {
    Mat3x9 t{};
    for (auto& row : t)
        for (double& x : row) x = states::gaussian(g);
    return t;
}

Mat3x9 scaled(Mat3x9 t, double f) {
    for (auto& row : t)
        for (double& x : row) x *= f;
    return t;
}

Mat3 random_orthogonal(std::mt19937_64& g) {
    Mat3 m{};
    for (auto& row : m)
        for (double& x : row) x = states::gaussian(g);
    return polar_factor(m);
}

// locally rotated GHZ correlations with the x and y rows weighted
Mat3x9 alignable_tensor(std::mt19937_64& g, double wx, double wy) {
    Mat3x9 t = decompose(states::build(states::StateSpec::ghz())).t_matrix();
    for (double& x : t[0]) x *= wx;
    for (double& x : t[1]) x *= wy;
    for (double& x : t[2]) x = 0;
    return multiply(random_orthogonal(g), multiply(t, kron(random_orthogonal(g), random_orthogonal(g))));
}

oracle::SeeSawConfig seesaw(int restarts, std::uint64_t seed, std::optional<Angles> fixed = std::nullopt) {
    oracle::SeeSawConfig c;
    c.restarts = restarts;
    c.seed = seed;
    c.angle_constraints = fixed;
    return c;
}

CorrelationDecomposition ghz() { return decompose(states::build(states::StateSpec::ghz())); }

Outcome ghz_mermin() {
    const CorrelationDecomposition d = ghz();
    const double bound = mermin::equal_strengths(d.t_matrix(), 1, 1, 1).bound_value;
    const double found = oracle::see_saw_maximize(d, StrengthSextuple{}, {}, OperatorKind::mermin, seesaw(20, 0)).value;
    return {std::abs(bound - 4) <= 1e-6 && std::abs(found - 4) <= 1e-6, fmt("bound %.12f, see-saw %.12f", bound, found)};
}

Outcome ghz_svetlichny() {
    const CorrelationDecomposition d = ghz();
    const double bound = svetlichny::equal_strengths(d.t_matrix(), 1, 1, 1).bound_value;
    const double found =
        oracle::see_saw_maximize(d, StrengthSextuple{}, {}, OperatorKind::svetlichny, seesaw(20, 0)).value;
    const double target = 4 * kSqrt2;
    return {std::abs(bound - target) <= 1e-6 && std::abs(found - target) <= 1e-6,
            fmt("bound %.12f, see-saw %.12f, 4*sqrt2 = %.12f", bound, found, target)};
}

Outcome closed_form_identities() {
    std::mt19937_64 g(3);
    double worst_i = 0, worst_j = 0;
    for (int n = 0; n < 1000; ++n) {
        const StrengthSextuple r = random_strengths(g);
        const Angles a = random_angles(g);
        const PlusMinus i = mermin::i_plus_minus(r, a), j = svetlichny::j_plus_minus(r, a);
        const Vec3 v = singular_values_3x9(mermin::build_v_matrix(r, a)).values;
        const Vec3 w = singular_values_3x9(svetlichny::build_w_matrix(r, a)).values;
        worst_i = std::max({worst_i, std::abs(i.plus - (v[0] + v[1])), std::abs(i.minus - (v[0] - v[1]))});
        worst_j = std::max({worst_j, std::abs(j.plus - (w[0] + w[1])), std::abs(j.minus - (w[0] - w[1]))});
    }
    return {worst_i < 1e-10 && worst_j < 1e-10, fmt("max |I - svd| %.3g, max |J - svd| %.3g over 1000 draws", worst_i, worst_j)};
}

Outcome brute_force_kl() {
    std::mt19937_64 g(4);
    double worst_k = 0, worst_l = 0;
    for (int n = 0; n < 500; ++n) {
        const StrengthSextuple r = random_strengths(g);
        worst_k = std::max(worst_k, std::abs(mermin::k_max(r) - oracle::k_brute_force(r)));
        worst_l = std::max(worst_l, std::abs(svetlichny::l_max(r) - oracle::l_brute_force(r)));
    }
    return {worst_k <= 1e-12 && worst_l <= 1e-12, fmt("max |K - brute| %.3g, max |L - brute| %.3g over 500 sextuples", worst_k, worst_l)};
}

Outcome biased_windows() {
    const Window wm = mermin::biased_window(2.0), ws = svetlichny::biased_window(2.0);
    bool ok = std::abs(wm.r_biased - (-3 + std::sqrt(21.0)) / 2) <= 1e-9 &&
              std::abs(wm.r_unbiased - std::pow(2.0, -1.0 / 3)) <= 1e-9 &&
              std::abs(ws.r_unbiased - std::pow(2.0, -1.0 / 6)) <= 1e-9;
    // the expected Svetlichny value is quoted to five digits; the window equation's root differs
    const double root_residual = 2 * kSqrt2 * std::pow(ws.r_biased, 3) * 2 + 4 * std::pow(1 - ws.r_biased, 3) - 4;
    const bool literal = std::abs(ws.r_biased - 0.88973) <= 5e-6;
    ok = ok && literal && std::abs(root_residual) <= 1e-9;
    // GHZ correlations, P = 2; the T-matrix forms take only the tensor
    Mat3x9 t{};
    t[0][0] = 1;
    t[0][4] = -1;
    t[1][1] = -1;
    t[1][3] = -1;
    const double rm = 0.5 * (wm.r_biased + wm.r_unbiased), rs = 0.5 * (ws.r_biased + ws.r_unbiased);
    const double m_unb = mermin::equal_strengths(t, rm, rm, rm).bound_value;
    const double m_bia = mermin::equal_strengths(t, rm, rm, rm).bound_value + mermin::k_max(StrengthSextuple::uniform(rm));
    const double s_unb = svetlichny::equal_strengths(t, rs, rs, rs).bound_value;
    const double s_bia = s_unb + svetlichny::l_max(StrengthSextuple::uniform(rs));
    ok = ok && m_unb <= 2 && m_bia > 2 && s_unb <= 4 && s_bia > 4;
    return {ok, fmt("mermin (%.9f, %.9f), svetlichny (%.9f, %.9f)", wm.r_biased, wm.r_unbiased, ws.r_biased,
                    ws.r_unbiased) +
                    fmt("; svetlichny r_biased is the exact window root (residual %.1e) but differs from the expected "
                        "0.88973 by %.2e",
                        root_residual, std::abs(ws.r_biased - 0.88973)) +
                    fmt("; midpoint mermin %.6f / %.6f, svetlichny %.6f / %.6f (unbiased / biased)", m_unb, m_bia,
                        s_unb, s_bia)};
}

// Gaussian T rescaled so s1 = 1; equal strengths per side in [0.5, 1]
Outcome tightness(bool alignable) {
    std::mt19937_64 g(alignable ? 66 : 6);
    double worst = 0;
    int misses = 0;
    for (int n = 0; n < 50; ++n) {
        Mat3x9 t;
        if (alignable) {
            t = alignable_tensor(g, 1.0, uniform(g));
        } else {
            t = random_tensor(g);
            t = scaled(t, 1 / singular_values_3x9(t).values[0]);
        }
        const CorrelationDecomposition d = CorrelationDecomposition::from_t_matrix(t);
        const double rx = uniform(g, 0.5, 1), ry = uniform(g, 0.5, 1), rz = uniform(g, 0.5, 1);
        const StrengthSextuple r = StrengthSextuple::per_side(rx, ry, rz);
        const BoundReport m = mermin::equal_strengths(t, rx, ry, rz);
        const BoundReport s = svetlichny::equal_strengths(t, rx, ry, rz);
        const double gm = m.bound_value -
                          oracle::see_saw_maximize(d, r, {}, OperatorKind::mermin, seesaw(50, n, m.achieving_angles)).value;
        const double gs =
            s.bound_value -
            oracle::see_saw_maximize(d, r, {}, OperatorKind::svetlichny, seesaw(50, n, s.achieving_angles)).value;
        const double gap = std::max(gm, gs);
        worst = std::max(worst, gap);
        misses += gap > 1e-4;
    }
    return {misses == 0, fmt("%.0f of 50 tensors miss by more than 1e-4, worst gap %.4f", misses, worst)};
}

Outcome soundness() {
    std::mt19937_64 g(7);
    double worst = -1e9;
    for (int n = 0; n < 200; ++n) {
        const CorrelationDecomposition d = decompose(states::build(states::StateSpec::random(7000 + n)));
        const StrengthSextuple r = random_strengths(g);
        const MeasurementSetting s{GeneralObservable(0, r.rx, random_unit(g)),  GeneralObservable(0, r.rxp, random_unit(g)),
                                   GeneralObservable(0, r.ry, random_unit(g)),  GeneralObservable(0, r.ryp, random_unit(g)),
                                   GeneralObservable(0, r.rz, random_unit(g)),  GeneralObservable(0, r.rzp, random_unit(g))};
        const Angles a = s.angles();
        worst = std::max(worst, std::abs(mermin_expectation(d, s)) - mermin::unbiased(d.t_matrix(), r, a).bound_value);
        worst = std::max(worst,
                         std::abs(svetlichny_expectation(d, s)) - svetlichny::unbiased(d.t_matrix(), r, a).bound_value);
    }
    return {worst <= 1e-9, fmt("max excess of |<op>| over the bound %.3g over 200 states", worst)};
}

Outcome sharp_limits() {
    std::mt19937_64 g(8);
    double worst = 0;
    for (int n = 0; n < 100; ++n) {
        const Mat3x9 t = random_tensor(g);
        const Vec3 s = singular_values_3x9(t).values;
        const double p = std::sqrt(s[0] * s[0] + s[1] * s[1]);
        const BoundReport m = mermin::equal_strengths(t, 1, 1, 1);
        const BoundReport sv = svetlichny::equal_strengths(t, 1, 1, 1);
        worst = std::max({worst, std::abs(m.bound_value - 2 * p), std::abs(sv.bound_value - 2 * kSqrt2 * p),
                          std::abs(mermin::unbiased(t, StrengthSextuple{}, *m.achieving_angles).bound_value - 2 * p),
                          std::abs(svetlichny::unbiased(t, StrengthSextuple{}, *sv.achieving_angles).bound_value -
                                   2 * kSqrt2 * p)});
    }
    return {worst <= 1e-10, fmt("max deviation %.3g over 100 tensors (values and closed forms at the reported angles)", worst)};
}

Outcome local_unitary() {
    std::mt19937_64 g(9);
    double worst = 0;
    for (int n = 0; n < 100; ++n) {
        const ThreeQubitState st = states::build(states::StateSpec::random(9000 + n));
        const ThreeQubitState rot = states::apply_local(st, states::random_unitary(g), states::random_unitary(g),
                                                        states::random_unitary(g));
        const Mat3x9 t0 = decompose(st).t_matrix(), t1 = decompose(rot).t_matrix();
        const StrengthSextuple r = random_strengths(g);
        const Angles a = random_angles(g);
        worst = std::max({worst,
                          std::abs(mermin::unbiased(t0, r, a).bound_value - mermin::unbiased(t1, r, a).bound_value),
                          std::abs(svetlichny::unbiased(t0, r, a).bound_value - svetlichny::unbiased(t1, r, a).bound_value),
                          std::abs(mermin::equal_strengths(t0, r.rx, r.ry, r.rz).bound_value -
                                   mermin::equal_strengths(t1, r.rx, r.ry, r.rz).bound_value)});
    }
    return {worst <= 1e-9, fmt("max change %.3g over 100 states", worst)};
}

Outcome visibility() {
    auto bound = [](double v) {
        const auto d = decompose(states::build(states::StateSpec::mix(states::StateSpec::ghz(), v)));
        return mermin::equal_strengths(d.t_matrix(), 1, 1, 1).bound_value;
    };
    double worst = 0;
    for (int i = 0; i <= 20; ++i) worst = std::max(worst, std::abs(bound(i / 20.0) - 4 * (i / 20.0)));
    // crossing of 2 by bisection
    double lo = 0, hi = 1;
    for (int k = 0; k < 60; ++k) (bound(0.5 * (lo + hi)) > 2 ? hi : lo) = 0.5 * (lo + hi);
    const double cross = 0.5 * (lo + hi);
    return {worst <= 1e-9 && std::abs(cross - 0.5) <= 1e-9, fmt("max |bound - 4v| %.3g, crossing at v = %.12f", worst, cross)};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const Criterion all[] = {
        {1, "GHZ sharp Mermin maximum 4", 5, ghz_mermin},
        {2, "GHZ sharp Svetlichny maximum 4*sqrt2", 5, ghz_svetlichny},
        {3, "closed-form I+-/J+- identities", 10, closed_form_identities},
        {4, "K_max/L_max brute-force equivalence", 5, brute_force_kl},
        {5, "biased-only violation windows at P = 2", 1, biased_windows},
        {6, "tightness of equal-strength bounds on random tensors", 60, [] { return tightness(false); }},
        {7, "soundness sweep", 30, soundness},
        {8, "sharp-limit reductions", 1e9, sharp_limits},
        {9, "local-unitary invariance", 1e9, local_unitary},
        {10, "visibility scaling 4v", 1e9, visibility},
    };
    int failed = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o = c.run();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s) {
            o.pass = false;
            o.detail += fmt("; over the %.0f s budget", c.budget_s);
        }
        failed += !o.pass;
        std::printf("criterion %2d %s: %s (%s; %.2f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    const auto t0 = std::chrono::steady_clock::now();
    const Outcome extra = tightness(true);
    std::printf("supplementary (not a criterion): tightness on product-form-alignable tensors %s (%s; %.2f s)\n",
                extra.pass ? "holds" : "does not hold", extra.detail.c_str(),
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    std::printf("%d of 10 criteria passed\n", 10 - failed);
    return failed ? 1 : 0;
}
