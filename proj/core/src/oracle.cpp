#include "bellbound/oracle.hpp"

#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellbound/mermin.hpp"
#include "bellbound/states.hpp"
#include "bellbound/svetlichny.hpp"

namespace bellbound::oracle {

namespace {

// One signed triple product; 0 = unprimed, 1 = primed observable of a party.
struct Term {
    double sign;
    int ix, iy, iz;
};

constexpr Term kMermin[] = {{1, 0, 0, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}, {-1, 1, 1, 1}};
// E − E'
constexpr Term kSvetlichny[] = {{1, 0, 0, 1},  {1, 0, 1, 0},  {1, 1, 0, 0},  {-1, 1, 1, 1},
                                {-1, 1, 1, 0}, {-1, 1, 0, 1}, {-1, 0, 1, 1}, {1, 0, 0, 0}};

std::span<const Term> terms_for(OperatorKind k) {
    if (k == OperatorKind::mermin) return kMermin;
    return kSvetlichny;
}

using Vec4 = std::array<double, 4>;
using Lambda = std::array<std::array<std::array<double, 4>, 4>, 4>;

Lambda lambda_of(const CorrelationDecomposition& d) {
    Lambda l{};
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            for (int g = 0; g < 4; ++g) l[m][n][g] = d.at(m, n, g);
    return l;
}

double contract(const Lambda& l, const Vec4& a, const Vec4& b, const Vec4& c) {
    double s = 0.0;
    for (int m = 0; m < 4; ++m) {
        if (a[m] == 0.0) continue;
        double t = 0.0;
        for (int n = 0; n < 4; ++n) t += b[n] * (l[m][n][0] * c[0] + l[m][n][1] * c[1] + l[m][n][2] * c[2] + l[m][n][3] * c[3]);
        s += a[m] * t;
    }
    return s;
}

// Λ contracted on every slot except `party`.
Vec4 partial(const Lambda& l, int party, const Vec4& u, const Vec4& v) {
    Vec4 g{};
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
            for (int k = 0; k < 4; ++k) {
                if (party == 0) g[m] += l[m][n][k] * u[n] * v[k];
                else if (party == 1) g[n] += l[m][n][k] * u[m] * v[k];
                else g[k] += l[m][n][k] * u[m] * v[n];
            }
    return g;
}

Vec3 random_unit(std::mt19937_64& rng) {
    const double c = 2 * states::uniform01(rng) - 1;
    const double phi = 2 * std::numbers::pi * states::uniform01(rng);
    const double s = std::sqrt(std::max(0.0, 1 - c * c));
    return {s * std::cos(phi), s * std::sin(phi), c};
}

Vec3 random_orthogonal_to(const Vec3& e1, std::mt19937_64& rng) {
    for (;;) {
        Vec3 v = random_unit(rng);
        v = v - dot(v, e1) * e1;
        const double n = norm(v);
        if (n > 1e-6) return (1.0 / n) * v;
    }
}

class SeeSaw {
public:
    SeeSaw(const CorrelationDecomposition& d, const StrengthSextuple& r, const std::array<double, 6>& b,
           OperatorKind kind)
        : lam_(lambda_of(d)), terms_(terms_for(kind)) {
        const auto rs = r.as_array();
        for (int p = 0; p < 3; ++p)
            for (int i = 0; i < 2; ++i) {
                strength_[p][i] = rs[2 * p + i];
                bias_[p][i] = b[2 * p + i];
            }
    }

    struct Run {
        double value;
        int sweeps;
        bool hit_max;
        double worst_step;
    };

    // Maximises sign·⟨operator⟩ starting from the directions in dirs_.
    Run ascend(double sign, const SeeSawConfig& cfg) {
        sign_ = sign;
        double v = objective();
        Run run{v, 0, true, 0.0};
        for (int s = 0; s < cfg.max_sweeps; ++s) {
            for (int p = 0; p < 3; ++p) {
                if (cfg.angle_constraints) update_constrained(p, angle_of(*cfg.angle_constraints, p));
                else update_free(p);
            }
            const double nv = objective();
            run.worst_step = std::min(run.worst_step, nv - v);
            run.sweeps = s + 1;
            const bool done = nv - v < cfg.convergence_tol;
            v = nv;
            if (done) {
                run.hit_max = false;
                break;
            }
        }
        run.value = v;
        return run;
    }

    void randomize(std::mt19937_64& rng, const std::optional<Angles>& constraint) {
        for (int p = 0; p < 3; ++p) {
            if (constraint) {
                e1_[p] = random_unit(rng);
                e2_[p] = random_orthogonal_to(e1_[p], rng);
                place(p, angle_of(*constraint, p));
            } else {
                dirs_[p][0] = random_unit(rng);
                dirs_[p][1] = random_unit(rng);
            }
        }
    }

    MeasurementSetting setting() const {
        auto obs = [&](int p, int i) { return GeneralObservable(bias_[p][i], strength_[p][i], dirs_[p][i]); };
        return {obs(0, 0), obs(0, 1), obs(1, 0), obs(1, 1), obs(2, 0), obs(2, 1)};
    }

private:
    static double angle_of(const Angles& a, int p) { return p == 0 ? a.x : (p == 1 ? a.y : a.z); }

    Vec4 vec(int p, int i) const {
        const double r = strength_[p][i];
        const Vec3& n = dirs_[p][i];
        return {bias_[p][i], r * n[0], r * n[1], r * n[2]};
    }

    double objective() const {
        double s = 0.0;
        for (const Term& t : terms_) s += t.sign * contract(lam_, vec(0, t.ix), vec(1, t.iy), vec(2, t.iz));
        return sign_ * s;
    }

    // Coefficient 3-vector of the linear form in direction (p, i), strength included.
    Vec3 gradient(int p, int i) const {
        Vec4 g{};
        for (const Term& t : terms_) {
            const int idx[3] = {t.ix, t.iy, t.iz};
            if (idx[p] != i) continue;
            Vec4 part;
            if (p == 0) part = partial(lam_, 0, vec(1, t.iy), vec(2, t.iz));
            else if (p == 1) part = partial(lam_, 1, vec(0, t.ix), vec(2, t.iz));
            else part = partial(lam_, 2, vec(0, t.ix), vec(1, t.iy));
            for (int m = 0; m < 4; ++m) g[m] += t.sign * part[m];
        }
        const double f = sign_ * strength_[p][i];
        return {f * g[1], f * g[2], f * g[3]};
    }

    void update_free(int p) {
        for (int i = 0; i < 2; ++i) {
            const Vec3 g = gradient(p, i);
            const double n = norm(g);
            if (n >= 1e-14) dirs_[p][i] = (1.0 / n) * g;
        }
    }

    void place(int p, double theta) {
        const double c = std::cos(theta / 2), s = std::sin(theta / 2);
        dirs_[p][0] = c * e1_[p] + s * e2_[p];
        dirs_[p][1] = c * e1_[p] - s * e2_[p];
    }

    void update_constrained(int p, double theta) {
        const double c = std::cos(theta / 2), s = std::sin(theta / 2);
        const Vec3 g = gradient(p, 0), gp = gradient(p, 1);
        const auto [e1, e2] = procrustes_pair(c * (g + gp), s * (g - gp), e1_[p], e2_[p]);
        e1_[p] = e1;
        e2_[p] = e2;
        place(p, theta);
    }

    Lambda lam_;
    std::span<const Term> terms_;
    double strength_[3][2]{};
    double bias_[3][2]{};
    double sign_ = 1.0;
    std::array<std::array<Vec3, 2>, 3> dirs_{};
    std::array<Vec3, 3> e1_{}, e2_{};
};

}  // namespace

void SeeSawConfig::validate() const {
    if (restarts < 1) throw std::invalid_argument("see-saw restarts must be >= 1");
    if (max_sweeps < 1) throw std::invalid_argument("see-saw max_sweeps must be >= 1");
    if (!(convergence_tol >= 1e-14)) throw std::invalid_argument("see-saw convergence_tol must be >= 1e-14");
    if (angle_constraints) angle_constraints->validate();
}

SeeSawResult see_saw_maximize(const CorrelationDecomposition& d, const StrengthSextuple& r,
                              const std::array<double, 6>& biases, OperatorKind kind, const SeeSawConfig& cfg) {
    cfg.validate();
    const auto rs = r.as_array();
    for (int i = 0; i < 6; ++i)
        if (std::abs(biases[i]) > 1 - rs[i] + kObservableTol)
            throw std::invalid_argument("bias " + std::to_string(i) + " violates |B| <= 1 - R");

    SeeSaw engine(d, r, biases, kind);
    SeeSawResult best;
    best.value = -1.0;
    for (int restart = 0; restart < cfg.restarts; ++restart) {
        std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(restart));
        engine.randomize(rng, cfg.angle_constraints);
        const SeeSaw start = engine;
        for (double sign : {1.0, -1.0}) {
            engine = start;
            const SeeSaw::Run run = engine.ascend(sign, cfg);
            best.hit_max_sweeps = best.hit_max_sweeps || run.hit_max;
            best.worst_step = std::min(best.worst_step, run.worst_step);
            if (run.value > best.value) {
                best.value = run.value;
                best.setting = engine.setting();
                best.best_restart = restart;
                best.sweeps = run.sweeps;
            }
        }
    }
    return best;
}

SeeSawResult bias_optimize(const CorrelationDecomposition& d, const StrengthSextuple& r, OperatorKind kind,
                           const SeeSawConfig& cfg) {
    const auto rs = r.as_array();
    SeeSawResult best;
    best.value = -1.0;
    for (unsigned pattern = 0; pattern < 64; ++pattern) {
        std::array<double, 6> b{};
        for (int i = 0; i < 6; ++i) b[i] = ((pattern >> i) & 1u ? -1.0 : 1.0) * (1 - rs[i]);
        SeeSawResult res = see_saw_maximize(d, r, b, kind, cfg);
        best.hit_max_sweeps = best.hit_max_sweeps || res.hit_max_sweeps;
        best.worst_step = std::min(best.worst_step, res.worst_step);
        if (res.value > best.value) {
            const bool hit = best.hit_max_sweeps;
            const double worst = best.worst_step;
            best = res;
            best.hit_max_sweeps = hit;
            best.worst_step = worst;
        }
    }
    return best;
}

namespace {

template <typename F>
double brute_force(const StrengthSextuple& r, F f) {
    const auto rs = r.as_array();
    double best = 0.0;
    for (unsigned pattern = 0; pattern < 64; ++pattern) {
        std::array<double, 6> b{};
        for (int i = 0; i < 6; ++i) b[i] = ((pattern >> i) & 1u ? -1.0 : 1.0) * (1 - rs[i]);
        best = std::max(best, std::abs(f(b)));
    }
    return best;
}

}  // namespace

double k_brute_force(const StrengthSextuple& r) { return brute_force(r, mermin::k_value); }
double l_brute_force(const StrengthSextuple& r) { return brute_force(r, svetlichny::l_value); }

namespace {

using Tensor3 = std::array<std::array<std::array<double, 3>, 3>, 3>;

Tensor3 as_tensor(const Mat3x9& m) {
    Tensor3 t{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) t[i][j][k] = m[i][3 * j + k];
    return t;
}

// G for frame `which` of f = Σ T_abc Fx_ai Fy_bj Fz_ck V_ijk, so f = Tr(F_whichᵀ G).
Mat3 frame_gradient(const Tensor3& t, const Tensor3& v, const std::array<Mat3, 3>& f, int which) {
    Mat3 g{};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                const double tabc = t[a][b][c];
                if (tabc == 0.0) continue;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        for (int k = 0; k < 3; ++k) {
                            const double vijk = v[i][j][k];
                            if (vijk == 0.0) continue;
                            if (which == 0) g[a][i] += tabc * f[1][b][j] * f[2][c][k] * vijk;
                            else if (which == 1) g[b][j] += tabc * f[0][a][i] * f[2][c][k] * vijk;
                            else g[c][k] += tabc * f[0][a][i] * f[1][b][j] * vijk;
                        }
            }
    return g;
}

double frame_value(const Tensor3& t, const Tensor3& v, const std::array<Mat3, 3>& f) {
    const Mat3 g = frame_gradient(t, v, f, 0);
    double s = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int i = 0; i < 3; ++i) s += f[0][a][i] * g[a][i];
    return s;
}

Mat3 random_frame(std::mt19937_64& rng) {
    Mat3 m{};
    for (auto& row : m)
        for (double& x : row) x = states::gaussian(rng);
    return polar_factor(m);
}

}  // namespace

SaturationResult construct_saturating_setting(const Mat3x9& t, const StrengthSextuple& r, const Angles& a,
                                              OperatorKind kind, std::uint64_t seed) {
    a.validate();
    const Mat3x9 vm = kind == OperatorKind::mermin ? mermin::build_v_matrix(r, a) : svetlichny::build_w_matrix(r, a);
    const Vec3 st = singular_values_3x9(t).values, sv = singular_values_3x9(vm).values;
    SaturationResult out;
    out.bound = dot(st, sv);

    const Tensor3 tt = as_tensor(t), vv = as_tensor(vm);
    std::array<Mat3, 3> best{identity3(), identity3(), identity3()};
    double best_value = frame_value(tt, vv, best);
    std::mt19937_64 rng(seed);
    constexpr int kStarts = 24;
    for (int start = 0; start < kStarts && best_value < out.bound - 1e-12; ++start) {
        std::array<Mat3, 3> f{random_frame(rng), random_frame(rng), random_frame(rng)};
        double v = frame_value(tt, vv, f);
        for (int it = 0; it < 5000; ++it) {
            for (int w = 0; w < 3; ++w) f[w] = polar_factor(frame_gradient(tt, vv, f, w));
            const double nv = frame_value(tt, vv, f);
            const bool stalled = nv - v < 1e-15;
            v = nv;
            if (stalled || v >= out.bound - 1e-13) break;
        }
        if (v > best_value) {
            best_value = v;
            best = f;
        }
    }

    // x = cos(θ/2) x1 + sin(θ/2) x2 with x1, x2 the first two frame columns
    auto pair = [&](const Mat3& f, double theta) {
        const double c = std::cos(theta / 2), s = std::sin(theta / 2);
        const Vec3 e1{f[0][0], f[1][0], f[2][0]}, e2{f[0][1], f[1][1], f[2][1]};
        return std::pair<Vec3, Vec3>{c * e1 + s * e2, c * e1 - s * e2};
    };
    const auto [x, xp] = pair(best[0], a.x);
    const auto [y, yp] = pair(best[1], a.y);
    const auto [z, zp] = pair(best[2], a.z);
    out.setting = {GeneralObservable(0, r.rx, x),  GeneralObservable(0, r.rxp, xp), GeneralObservable(0, r.ry, y),
                   GeneralObservable(0, r.ryp, yp), GeneralObservable(0, r.rz, z),  GeneralObservable(0, r.rzp, zp)};
    out.value = std::abs(operator_expectation(CorrelationDecomposition::from_t_matrix(t), out.setting, kind));
    out.residual = out.bound - out.value;
    out.constructible = out.residual <= 1e-6;
    return out;
}

double grid_scan(const CorrelationDecomposition& d, const StrengthSextuple& r, OperatorKind kind, int resolution) {
    if (resolution < 2 || resolution > kGridMaxResolution)
        throw std::invalid_argument("grid_scan resolution must lie in [2, " + std::to_string(kGridMaxResolution) + "]");
    const int n = resolution;
    const Tensor3 t = as_tensor(d.t_matrix());

    // every (plane, in-plane angle, in-plane angle) pair of unit vectors
    std::vector<std::array<Vec3, 2>> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * n * n * n);
    for (int ia = 0; ia < n; ++ia) {
        const double al = (std::numbers::pi / 2) * ia / (n - 1);
        for (int ib = 0; ib < n; ++ib) {
            const double be = std::numbers::pi * ib / n;
            const Vec3 e1{std::cos(al) * std::cos(be), std::cos(al) * std::sin(be), -std::sin(al)};
            const Vec3 e2{-std::sin(be), std::cos(be), 0.0};
            for (int i1 = 0; i1 < n; ++i1) {
                const double p1 = 2 * std::numbers::pi * i1 / n;
                const Vec3 u = std::cos(p1) * e1 + std::sin(p1) * e2;
                for (int i2 = 0; i2 < n; ++i2) {
                    const double p2 = 2 * std::numbers::pi * i2 / n;
                    pairs.push_back({u, std::cos(p2) * e1 + std::sin(p2) * e2});
                }
            }
        }
    }

    const double ry[2] = {r.ry, r.ryp}, rz[2] = {r.rz, r.rzp};
    const std::span<const Term> terms = terms_for(kind);
    double best = 0.0;
    for (const auto& yy : pairs) {
        // T contracted with y and y' on the second slot
        Mat3 ty[2]{};
        for (int s = 0; s < 2; ++s)
            for (int a = 0; a < 3; ++a)
                for (int c = 0; c < 3; ++c)
                    ty[s][a][c] = t[a][0][c] * yy[s][0] + t[a][1][c] * yy[s][1] + t[a][2][c] * yy[s][2];
        for (const auto& zz : pairs) {
            Vec3 tyz[2][2];
            for (int s = 0; s < 2; ++s)
                for (int u = 0; u < 2; ++u) tyz[s][u] = multiply(ty[s], zz[u]);
            Vec3 g[2]{};
            for (const Term& term : terms)
                g[term.ix] = g[term.ix] + (term.sign * ry[term.iy] * rz[term.iz]) * tyz[term.iy][term.iz];
            best = std::max(best, r.rx * norm(g[0]) + r.rxp * norm(g[1]));
        }
    }
    return best;
}

}  // namespace bellbound::oracle
