#include "engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "parallel.hpp"

namespace bellbound::cli {

namespace {

const char* prefix(OperatorKind op) { return op == OperatorKind::mermin ? "mermin" : "svetlichny"; }

double classical(OperatorKind op) { return op == OperatorKind::mermin ? mermin::kClassical : svetlichny::kClassical; }

bool close(double a, double b) { return std::abs(a - b) <= kApplicabilityTol; }

bool x_asymmetric_shape(const StrengthSextuple& r) {
    return close(r.ry, r.ryp) && close(r.rz, r.rzp) && r.rx >= r.rxp - kApplicabilityTol;
}

const std::vector<std::string>& base_names() {
    static const std::vector<std::string> names = {"unbiased",         "equal_strengths", "sufficient_orthogonal",
                                                   "six_variant",      "tstate",          "x_asymmetric",
                                                   "degenerate_smax",  "tightest"};
    return names;
}

struct Context {
    OperatorKind op;
    const CorrelationDecomposition& d;
    Mat3x9 t;
    Vec3 s;
    StrengthSextuple r;
    Angles angles;
    bool angles_optimal;
    bool is_tstate;
    bool degenerate;
};

BoundReport from_criterion(const CriterionResult& c, std::string name, const Angles& a) {
    BoundReport rep;
    rep.bound_value = c.value;
    rep.criterion = std::move(name);
    rep.achieving_angles = a;
    return rep;
}

// Reports for one base criterion name. `branch` narrows svetlichny x_asymmetric.
std::vector<BoundReport> evaluate(const Context& c, const std::string& base, const std::string& branch, bool strict) {
    const bool m = c.op == OperatorKind::mermin;
    const StrengthSextuple& r = c.r;
    const std::string full = std::string(prefix(c.op)) + "_" + base;
    auto refuse = [&](const std::string& why) -> std::vector<BoundReport> {
        if (strict) throw IncompatibleError(full + ": " + why);
        return {};
    };

    if (base == "unbiased")
        return {m ? mermin::unbiased(c.t, r, c.angles) : svetlichny::unbiased(c.t, r, c.angles)};
    if (base == "sufficient_orthogonal")
        return {from_criterion(m ? mermin::sufficient_orthogonal(c.t, r) : svetlichny::sufficient_orthogonal(c.t, r),
                               full, Angles::orthogonal())};
    if (base == "six_variant")
        return {from_criterion(m ? mermin::six_variant(c.t, r, c.angles) : svetlichny::six_variant(c.t, r, c.angles),
                               full, c.angles)};
    if (base == "equal_strengths") {
        if (!r.equal_per_side(kApplicabilityTol)) return refuse("strengths differ within a party");
        return {m ? mermin::equal_strengths(c.t, r.rx, r.ry, r.rz) : svetlichny::equal_strengths(c.t, r.rx, r.ry, r.rz)};
    }
    if (base == "tstate") {
        if (!c.is_tstate) return refuse("state is not a T-state");
        return {m ? mermin::tstate(c.d, r, c.angles) : svetlichny::tstate(c.d, r, c.angles)};
    }
    if (base == "x_asymmetric") {
        if (!x_asymmetric_shape(r)) return refuse("needs R_Y = R_Y', R_Z = R_Z' and R_X >= R_X'");
        if (m) return {mermin::x_asymmetric(c.t, r.rx, r.rxp, r.ry, r.rz, c.is_tstate)};
        using svetlichny::Branch;
        std::vector<BoundReport> out;
        for (Branch b : {Branch::orthogonal, Branch::mixed, Branch::parallel}) {
            if (!branch.empty() && branch != svetlichny::to_string(b)) continue;
            if (b == Branch::parallel && !c.degenerate) {
                if (!branch.empty()) return refuse("parallel branch needs s1(T) = s2(T)");
                continue;
            }
            out.push_back(svetlichny::x_asymmetric(c.t, r.rx, r.rxp, r.ry, r.rz, b, c.is_tstate));
        }
        return out;
    }
    if (base == "degenerate_smax") {
        if (!c.degenerate) return refuse("top two singular values of T are not degenerate");
        return {m ? mermin::degenerate_smax(r, c.s[0], c.is_tstate) : svetlichny::degenerate_smax(r, c.s[0], c.is_tstate)};
    }
    throw ConfigError("criteria", "unknown criterion '" + full + "'");
}

// Upper bounds on the optimum over angles (and biases, for T-states) that
// the tightest aggregator may take the minimum of.
std::vector<BoundReport> tightest_candidates(const Context& c) {
    std::vector<BoundReport> out;
    auto add = [&](const std::string& base) {
        for (auto& rep : evaluate(c, base, "", false)) out.push_back(std::move(rep));
    };
    if (c.is_tstate) {
        if (c.angles_optimal) add("tstate");
        if (c.op == OperatorKind::mermin) add("x_asymmetric");
    } else {
        if (c.angles_optimal) add("unbiased");
        // the svetlichny equal-strength value is exceeded by measurements when s1 > s2
        if (c.op == OperatorKind::mermin) {
            add("equal_strengths");
            add("x_asymmetric");
        }
    }
    return out;
}

std::optional<BoundReport> tightest(const Context& c, bool strict) {
    std::vector<BoundReport> cands = tightest_candidates(c);
    if (cands.empty()) {
        if (strict)
            throw IncompatibleError(std::string(prefix(c.op)) +
                                    "_tightest: no applicable upper bound (use optimal angles)");
        return std::nullopt;
    }
    auto best = std::min_element(cands.begin(), cands.end(),
                                 [](const BoundReport& a, const BoundReport& b) { return a.bound_value < b.bound_value; });
    BoundReport rep = *best;
    rep.note = "artifact-level: smallest applicable upper bound, from " + best->criterion;
    rep.criterion = std::string(prefix(c.op)) + "_tightest";
    rep.attained_value.reset();
    return rep;
}

// "mermin_x_asymmetric_mixed" -> (mermin, x_asymmetric, mixed)
struct ParsedName {
    OperatorKind op;
    std::string base;
    std::string branch;
};

ParsedName parse_name(const std::string& name) {
    ParsedName p{};
    std::string rest;
    if (name.rfind("mermin_", 0) == 0) {
        p.op = OperatorKind::mermin;
        rest = name.substr(7);
    } else if (name.rfind("svetlichny_", 0) == 0) {
        p.op = OperatorKind::svetlichny;
        rest = name.substr(11);
    } else {
        throw ConfigError("criteria", "unknown criterion '" + name + "'");
    }
    for (const char* b : {"orthogonal", "mixed", "parallel"}) {
        const std::string suffix = std::string("x_asymmetric_") + b;
        if (p.op == OperatorKind::svetlichny && rest == suffix) {
            p.base = "x_asymmetric";
            p.branch = b;
            return p;
        }
    }
    if (std::find(base_names().begin(), base_names().end(), rest) == base_names().end())
        throw ConfigError("criteria", "unknown criterion '" + name + "'");
    p.base = rest;
    return p;
}

std::vector<OperatorKind> selected_ops(OperatorSel sel) {
    switch (sel) {
        case OperatorSel::mermin: return {OperatorKind::mermin};
        case OperatorSel::svetlichny: return {OperatorKind::svetlichny};
        default: return {OperatorKind::mermin, OperatorKind::svetlichny};
    }
}

}  // namespace

const std::vector<std::string>& criterion_catalog() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const char* op : {"mermin", "svetlichny"})
            for (const auto& b : base_names()) v.push_back(std::string(op) + "_" + b);
        for (const char* b : {"orthogonal", "mixed", "parallel"}) v.push_back(std::string("svetlichny_x_asymmetric_") + b);
        return v;
    }();
    return names;
}

void RunConfig::validate() const {
    try {
        state.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("state", e.what());
    }
    if (biases) {
        const auto rs = strengths.as_array();
        for (int i = 0; i < 6; ++i)
            if (!std::isfinite((*biases)[i]) || std::abs((*biases)[i]) > 1 - rs[i] + kObservableTol)
                throw ConfigError("biases", "entry " + std::to_string(i) + " violates |B| + R <= 1");
    }
    if (angles) {
        try {
            angles->validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError("angles", e.what());
        }
    }
    if (oracle_restarts < 0) throw ConfigError("oracle-restarts", "must be >= 0");
    if (angle_grid < 2 || angle_grid > 512) throw ConfigError("angle-grid", "must lie in [2, 512]");
    for (const auto& c : criteria) {
        const ParsedName p = parse_name(c);
        if (op != OperatorSel::both && (p.op == OperatorKind::mermin) != (op == OperatorSel::mermin))
            throw ConfigError("criteria", "'" + c + "' does not match --operator");
    }
}

Angles optimal_angles(OperatorKind op, const Mat3x9& t, const StrengthSextuple& r, int grid) {
    const bool m = op == OperatorKind::mermin;
    const Vec3 s = singular_values_3x9(t).values;
    auto value = [&](const Angles& a) {
        return pair_bound(s, m ? mermin::i_plus_minus(r, a) : svetlichny::j_plus_minus(r, a));
    };

    // printed optimal angles first; the grid only replaces them when it does
    // strictly better (it does for svetlichny with s1 > s2)
    std::vector<Angles> candidates;
    if (r.equal_per_side(kApplicabilityTol))
        candidates.push_back(*(m ? mermin::equal_strengths(t, r.rx, r.ry, r.rz)
                                 : svetlichny::equal_strengths(t, r.rx, r.ry, r.rz))
                                  .achieving_angles);
    if (m && x_asymmetric_shape(r))
        candidates.push_back(*mermin::x_asymmetric(t, r.rx, r.rxp, r.ry, r.rz, false).achieving_angles);

    Angles best = Angles::orthogonal();
    double best_value = -1.0;
    for (const Angles& a : candidates)
        if (const double v = value(a); v > best_value) {
            best_value = v;
            best = a;
        }
    std::vector<double> grid_angles(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) grid_angles[i] = std::numbers::pi * i / (grid - 1);
    for (double ax : grid_angles)
        for (double ay : grid_angles)
            for (double az : grid_angles) {
                const Angles a{ax, ay, az};
                if (const double v = value(a); v > best_value + 1e-12) {
                    best_value = v;
                    best = a;
                }
            }
    return best;
}

std::vector<ReportRow> compute_reports(const RunConfig& cfg, const CorrelationDecomposition& d) {
    const Mat3x9 t = d.t_matrix();
    const Vec3 s = singular_values_3x9(t).values;
    const bool is_t = states::is_tstate(d);
    const bool degenerate = top_pair_degenerate(s);

    // (operator, base, branch) in output order
    struct Job {
        OperatorKind op;
        std::string base, branch;
        bool strict;
    };
    std::vector<Job> jobs;
    if (cfg.criteria.empty()) {
        for (OperatorKind op : selected_ops(cfg.op))
            for (const auto& b : base_names()) jobs.push_back({op, b, "", false});
    } else {
        for (const auto& c : cfg.criteria) {
            const ParsedName p = parse_name(c);
            jobs.push_back({p.op, p.base, p.branch, true});
        }
    }

    std::optional<Angles> resolved[2];
    auto angles_for = [&](OperatorKind op) {
        if (cfg.angles) return *cfg.angles;
        auto& slot = resolved[op == OperatorKind::mermin ? 0 : 1];
        if (!slot) slot = optimal_angles(op, t, cfg.strengths, cfg.angle_grid);
        return *slot;
    };

    std::vector<ReportRow> rows;
    for (const Job& job : jobs) {
        const Angles a = angles_for(job.op);
        const Context c{job.op, d, t, s, cfg.strengths, a, !cfg.angles.has_value(), is_t, degenerate};
        std::vector<BoundReport> reps;
        if (job.base == "tightest") {
            if (auto rep = tightest(c, job.strict)) reps.push_back(*rep);
        } else {
            reps = evaluate(c, job.base, job.branch, job.strict);
        }
        for (auto& rep : reps) rows.push_back({job.op, std::move(rep), false});
    }

    if (cfg.oracle_restarts > 0) {
        const std::array<double, 6> biases = cfg.biases.value_or(std::array<double, 6>{});
        parallel_for(rows.size(), [&](std::size_t i) {
            BoundReport& rep = rows[i].report;
            oracle::SeeSawConfig sc;
            sc.restarts = cfg.oracle_restarts;
            sc.seed = cfg.seed;
            sc.angle_constraints = rep.achieving_angles;
            const bool with_bias = rep.criterion.find("tstate") != std::string::npos ||
                                   (rep.criterion.find("tightest") != std::string::npos && is_t);
            const oracle::SeeSawResult res = with_bias
                                                 ? oracle::bias_optimize(d, cfg.strengths, rows[i].op, sc)
                                                 : oracle::see_saw_maximize(d, cfg.strengths, biases, rows[i].op, sc);
            rep.attach_oracle(res.value);
        });
    }
    for (auto& row : rows) row.violated = row.report.bound_value > classical(row.op);
    return rows;
}

}  // namespace bellbound::cli
