#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "bellbound/bellbound.hpp"
#include "parallel.hpp"

namespace bellbound::cli {

namespace {

using Rng = std::mt19937_64;

// one generator per instance so threading does not change the draws
Rng instance_rng(std::uint64_t seed, std::size_t i) { return Rng(seed * 0x9E3779B97F4A7C15ull + i); }

StrengthSextuple random_strengths(Rng& g) {
    std::array<double, 6> r{};
    for (double& x : r) x = states::uniform01(g);
    return {r[0], r[1], r[2], r[3], r[4], r[5]};
}

Angles random_angles(Rng& g) {
    const double pi = std::numbers::pi;
    return {pi * states::uniform01(g), pi * states::uniform01(g), pi * states::uniform01(g)};
}

Mat3x9 random_tensor(Rng& g) {
    Mat3x9 t{};
    for (auto& row : t)
        for (double& x : row) x = states::gaussian(g);
    return t;
}

// Per-instance deviations, reduced to one max per property.
struct Collector {
    std::vector<std::vector<double>> dev;  // [property][instance]
    Collector(std::size_t props, std::size_t n) : dev(props, std::vector<double>(n, 0.0)) {}
    std::vector<PropertyResult> finish(const std::vector<std::pair<std::string, double>>& spec) const {
        std::vector<PropertyResult> out;
        for (std::size_t p = 0; p < spec.size(); ++p) {
            PropertyResult r;
            r.name = spec[p].first;
            r.tolerance = spec[p].second;
            r.instances = static_cast<int>(dev[p].size());
            for (double d : dev[p]) r.max_deviation = std::max(r.max_deviation, std::isnan(d) ? INFINITY : d);
            out.push_back(r);
        }
        return out;
    }
};

std::vector<PropertyResult> closed_form(std::uint64_t seed, int n) {
    const std::vector<std::pair<std::string, double>> spec = {
        {"i_plus_minus_vs_svd_v", 1e-10},
        {"j_plus_minus_vs_svd_w", 1e-10},
        {"mermin_orthogonal_excess_over_unbiased", 1e-10},
        {"svetlichny_orthogonal_vs_unbiased", 1e-10},
    };
    Collector c(spec.size(), n);
    parallel_for(n, [&](std::size_t i) {
        Rng g = instance_rng(seed, i);
        const StrengthSextuple r = random_strengths(g);
        const Angles a = random_angles(g);
        const Vec3 sv = singular_values_3x9(mermin::build_v_matrix(r, a)).values;
        const PlusMinus ipm = mermin::i_plus_minus(r, a);
        c.dev[0][i] = std::max(std::abs(ipm.plus - (sv[0] + sv[1])), std::abs(ipm.minus - (sv[0] - sv[1])));
        const Vec3 sw = singular_values_3x9(svetlichny::build_w_matrix(r, a)).values;
        const PlusMinus jpm = svetlichny::j_plus_minus(r, a);
        c.dev[1][i] = std::max(std::abs(jpm.plus - (sw[0] + sw[1])), std::abs(jpm.minus - (sw[0] - sw[1])));
        const Mat3x9 t = random_tensor(g);
        // fixed pairing (R_X radical with s1), so only ≤ in general
        c.dev[2][i] = std::max(0.0, mermin::sufficient_orthogonal(t, r).value -
                                        mermin::unbiased(t, r, Angles::orthogonal()).bound_value);
        c.dev[3][i] = std::abs(svetlichny::sufficient_orthogonal(t, r).value -
                               svetlichny::unbiased(t, r, Angles::orthogonal()).bound_value);
    });
    return c.finish(spec);
}

std::vector<PropertyResult> brute_force_kl(std::uint64_t seed, int n) {
    const std::vector<std::pair<std::string, double>> spec = {{"k_max_vs_64_patterns", 1e-12},
                                                              {"l_max_vs_64_patterns", 1e-12}};
    Collector c(spec.size(), n);
    parallel_for(n, [&](std::size_t i) {
        Rng g = instance_rng(seed, i);
        const StrengthSextuple r = random_strengths(g);
        c.dev[0][i] = std::abs(mermin::k_max(r) - oracle::k_brute_force(r));
        c.dev[1][i] = std::abs(svetlichny::l_max(r) - oracle::l_brute_force(r));
    });
    return c.finish(spec);
}

std::vector<PropertyResult> invariance(std::uint64_t seed, int n) {
    const std::vector<std::pair<std::string, double>> spec = {
        {"singular_values_of_t", 1e-9},
        {"mermin_unbiased_bound", 1e-9},
        {"svetlichny_unbiased_bound", 1e-9},
        {"mermin_expectation_rotated_setting", 1e-10},
    };
    Collector c(spec.size(), n);
    parallel_for(n, [&](std::size_t i) {
        Rng g = instance_rng(seed, i);
        const ThreeQubitState rho = states::build(states::StateSpec::random(g()));
        const auto ua = states::random_unitary(g), ub = states::random_unitary(g), uc = states::random_unitary(g);
        const ThreeQubitState rotated = states::apply_local(rho, ua, ub, uc);
        const CorrelationDecomposition d0 = decompose(rho), d1 = decompose(rotated);
        const Mat3x9 t0 = d0.t_matrix(), t1 = d1.t_matrix();
        const Vec3 s0 = singular_values_3x9(t0).values, s1 = singular_values_3x9(t1).values;
        c.dev[0][i] = std::max({std::abs(s0[0] - s1[0]), std::abs(s0[1] - s1[1]), std::abs(s0[2] - s1[2])});
        const StrengthSextuple r = random_strengths(g);
        const Angles a = random_angles(g);
        c.dev[1][i] = std::abs(mermin::unbiased(t0, r, a).bound_value - mermin::unbiased(t1, r, a).bound_value);
        c.dev[2][i] = std::abs(svetlichny::unbiased(t0, r, a).bound_value - svetlichny::unbiased(t1, r, a).bound_value);

        // rotate a random setting with the Bloch rotations of the unitaries
        const Mat3 ra = states::bloch_rotation(ua), rb = states::bloch_rotation(ub), rc = states::bloch_rotation(uc);
        auto unit = [&] {
            Vec3 v{states::gaussian(g), states::gaussian(g), states::gaussian(g)};
            return (1.0 / norm(v)) * v;
        };
        const Vec3 x = unit(), xp = unit(), y = unit(), yp = unit(), z = unit(), zp = unit();
        auto setting = [&](const Mat3& ma, const Mat3& mb, const Mat3& mc) {
            return MeasurementSetting{GeneralObservable(0, r.rx, multiply(ma, x)),
                                      GeneralObservable(0, r.rxp, multiply(ma, xp)),
                                      GeneralObservable(0, r.ry, multiply(mb, y)),
                                      GeneralObservable(0, r.ryp, multiply(mb, yp)),
                                      GeneralObservable(0, r.rz, multiply(mc, z)),
                                      GeneralObservable(0, r.rzp, multiply(mc, zp))};
        };
        const double e0 = mermin_expectation(d0, setting(identity3(), identity3(), identity3()));
        const double e1 = mermin_expectation(d1, setting(ra, rb, rc));
        c.dev[3][i] = std::abs(e0 - e1);
    });
    return c.finish(spec);
}

std::vector<PropertyResult> tightness(std::uint64_t seed, int n) {
    const std::vector<std::pair<std::string, double>> spec = {
        {"ghz_sharp_mermin_bound_minus_oracle", 1e-6},
        {"ghz_sharp_svetlichny_bound_minus_oracle", 1e-6},
        {"mermin_equal_strengths_bound_minus_constrained_oracle", 1e-4},
        {"svetlichny_equal_strengths_bound_minus_constrained_oracle", 1e-4},
        {"mermin_oracle_excess_over_bound", 1e-9},
        {"svetlichny_oracle_excess_over_bound", 1e-9},
    };
    Collector c(spec.size(), n);
    {
        const CorrelationDecomposition ghz = decompose(states::build(states::StateSpec::ghz()));
        oracle::SeeSawConfig cfg;
        cfg.seed = seed;
        const Mat3x9 t = ghz.t_matrix();
        c.dev[0][0] = std::abs(mermin::equal_strengths(t, 1, 1, 1).bound_value -
                               oracle::see_saw_maximize(ghz, {}, {}, OperatorKind::mermin, cfg).value);
        c.dev[1][0] = std::abs(svetlichny::equal_strengths(t, 1, 1, 1).bound_value -
                               oracle::see_saw_maximize(ghz, {}, {}, OperatorKind::svetlichny, cfg).value);
        c.dev[0].resize(1);
        c.dev[1].resize(1);
    }
    parallel_for(n, [&](std::size_t i) {
        Rng g = instance_rng(seed, i);
        Mat3x9 t = random_tensor(g);
        const double s1 = singular_values_3x9(t).values[0];
        for (auto& row : t)
            for (double& x : row) x /= s1;
        const double rx = states::uniform01(g), ry = states::uniform01(g), rz = states::uniform01(g);
        const StrengthSextuple r = StrengthSextuple::per_side(rx, ry, rz);
        const CorrelationDecomposition d = CorrelationDecomposition::from_t_matrix(t);
        for (int k = 0; k < 2; ++k) {
            const OperatorKind op = k == 0 ? OperatorKind::mermin : OperatorKind::svetlichny;
            const BoundReport rep =
                k == 0 ? mermin::equal_strengths(t, rx, ry, rz) : svetlichny::equal_strengths(t, rx, ry, rz);
            oracle::SeeSawConfig cfg;
            cfg.restarts = 50;
            cfg.seed = seed + i;
            cfg.angle_constraints = rep.achieving_angles;
            const double v = oracle::see_saw_maximize(d, r, {}, op, cfg).value;
            c.dev[2 + k][i] = rep.bound_value - v;
            c.dev[4 + k][i] = std::max(0.0, v - rep.bound_value);
        }
    });
    return c.finish(spec);
}

}  // namespace

bool SuiteResult::pass() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.pass(); });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"closed_form", "tightness", "brute_force_kl", "invariance"};
    return names;
}

int default_budget(const std::string& suite) {
    if (suite == "closed_form") return 1000;
    if (suite == "brute_force_kl") return 500;
    if (suite == "invariance") return 100;
    return 50;
}

SuiteResult run_suite(const std::string& suite, std::uint64_t seed, int budget) {
    if (budget < 1) throw std::invalid_argument("budget must be >= 1");
    SuiteResult out{suite, seed, budget, {}};
    if (suite == "closed_form") out.properties = closed_form(seed, budget);
    else if (suite == "brute_force_kl") out.properties = brute_force_kl(seed, budget);
    else if (suite == "invariance") out.properties = invariance(seed, budget);
    else if (suite == "tightness") out.properties = tightness(seed, budget);
    else throw std::invalid_argument("unknown suite '" + suite + "'");
    return out;
}

}  // namespace bellbound::cli
