#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <iostream>
#include <sstream>

#include "parallel.hpp"
#include "state_parse.hpp"
#include "verify.hpp"

namespace bellbound::cli {

using nlohmann::json;

namespace {

std::vector<double> parse_numbers(const std::string& text, const std::string& field, std::size_t want) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size() || !std::isfinite(v))
            throw ConfigError(field, "bad number '" + item + "'");
        out.push_back(v);
    }
    if (want != 0 && out.size() != want)
        throw ConfigError(field, "expected " + std::to_string(want) + " comma-separated values, got " +
                                     std::to_string(out.size()));
    return out;
}

const char* op_name(OperatorSel s) {
    switch (s) {
        case OperatorSel::mermin: return "mermin";
        case OperatorSel::svetlichny: return "svetlichny";
        default: return "both";
    }
}

json opt_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json angles_json(const std::optional<Angles>& a) {
    if (!a) return nullptr;
    return json::array({a->x, a->y, a->z});
}

json config_json(const RunConfig& cfg) {
    json c;
    const auto r = cfg.strengths.as_array();
    c["strengths"] = json(std::vector<double>(r.begin(), r.end()));
    c["biases"] = cfg.biases ? json(std::vector<double>(cfg.biases->begin(), cfg.biases->end())) : json(nullptr);
    c["angles"] = cfg.angles ? angles_json(cfg.angles) : json("optimal");
    c["operator"] = op_name(cfg.op);
    c["criteria"] = cfg.criteria.empty() ? json("all-applicable") : json(cfg.criteria);
    c["oracle_restarts"] = cfg.oracle_restarts;
    c["seed"] = cfg.seed;
    c["angle_grid"] = cfg.angle_grid;
    return c;
}

json report_json(const ReportRow& row) {
    const BoundReport& r = row.report;
    json j;
    j["criterion"] = r.criterion;
    j["operator"] = std::string(to_string(row.op));
    j["bound"] = r.bound_value;
    j["angles"] = angles_json(r.achieving_angles);
    j["oracle"] = opt_number(r.oracle_value);
    j["gap"] = opt_number(r.gap);
    j["violated"] = row.violated;
    j["attained"] = opt_number(r.attained_value);
    j["note"] = r.note;
    return j;
}

std::string csv_field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

// note may hold commas
std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

const char* kReportCsvHeader = "operator,criterion,bound,theta_x,theta_y,theta_z,oracle,gap,violated,attained,note";

std::string report_csv(const ReportRow& row) {
    const BoundReport& r = row.report;
    std::string line = std::string(to_string(row.op)) + "," + r.criterion + "," + format_double(r.bound_value);
    for (int k = 0; k < 3; ++k) {
        line += ",";
        if (r.achieving_angles) line += format_double(k == 0 ? r.achieving_angles->x : k == 1 ? r.achieving_angles->y
                                                                                            : r.achieving_angles->z);
    }
    line += "," + csv_field(r.oracle_value) + "," + csv_field(r.gap) + "," + (row.violated ? "true" : "false") + "," +
            csv_field(r.attained_value) + "," + csv_quote(r.note);
    return line;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("out", "cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw ConfigError("out", "write to '" + path + "' failed");
}

struct CommonFlags {
    std::string state = "ghz";
    std::string strengths = "1,1,1,1,1,1";
    std::string biases;
    std::string angles = "optimal";
    std::string op = "both";
    std::string criteria = "all-applicable";
    int oracle_restarts = 0;
    std::uint64_t seed = 0;
    int angle_grid = 64;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* sub, CommonFlags& f) {
    sub->add_option("--state", f.state, "ghz | gghz:<theta> | w | mix:<spec>:<v> | tstate:<9|27 floats> | random:<seed>");
    sub->add_option("--strengths", f.strengths, "rx,rxp,ry,ryp,rz,rzp");
    sub->add_option("--biases", f.biases, "bx,bxp,by,byp,bz,bzp (oracle only; default 0)");
    sub->add_option("--angles", f.angles, "tx,ty,tz or 'optimal'");
    sub->add_option("--operator", f.op, "mermin | svetlichny | both");
    sub->add_option("--criteria", f.criteria, "comma list of criterion names or 'all-applicable'");
    sub->add_option("--oracle-restarts", f.oracle_restarts, "see-saw restarts per report (0 disables the oracle)");
    sub->add_option("--seed", f.seed, "oracle seed");
    sub->add_option("--angle-grid", f.angle_grid, "points per angle for the optimal-angle search");
    sub->add_option("--out", f.out, "output file (default stdout)");
    sub->add_option("--format", f.format, "json | csv");
}

RunConfig make_config(const CommonFlags& f) {
    RunConfig cfg;
    cfg.state_text = f.state;
    try {
        cfg.state = parse_state_spec(f.state);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("state", e.what());
    }
    const auto r = parse_numbers(f.strengths, "strengths", 6);
    try {
        cfg.strengths = StrengthSextuple(r[0], r[1], r[2], r[3], r[4], r[5]);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("strengths", e.what());
    }
    if (!f.biases.empty()) {
        const auto b = parse_numbers(f.biases, "biases", 6);
        cfg.biases = std::array<double, 6>{b[0], b[1], b[2], b[3], b[4], b[5]};
    }
    if (f.angles != "optimal") {
        const auto a = parse_numbers(f.angles, "angles", 3);
        cfg.angles = Angles{a[0], a[1], a[2]};
    }
    if (f.op == "mermin") cfg.op = OperatorSel::mermin;
    else if (f.op == "svetlichny") cfg.op = OperatorSel::svetlichny;
    else if (f.op == "both") cfg.op = OperatorSel::both;
    else throw ConfigError("operator", "expected mermin, svetlichny or both");
    if (f.criteria != "all-applicable") {
        std::stringstream ss(f.criteria);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) cfg.criteria.push_back(item);
        if (cfg.criteria.empty()) throw ConfigError("criteria", "empty list");
    }
    cfg.oracle_restarts = f.oracle_restarts;
    cfg.seed = f.seed;
    cfg.angle_grid = f.angle_grid;
    if (f.format != "json" && f.format != "csv") throw ConfigError("format", "expected json or csv");
    cfg.validate();
    return cfg;
}

CorrelationDecomposition state_of(const RunConfig& cfg) {
    try {
        return decompose(states::build(cfg.state));
    } catch (const PhysicalityError& e) {
        throw ConfigError("state", e.what());
    }
}

std::string bound_text(const RunConfig& cfg, const std::vector<ReportRow>& rows, const std::string& format) {
    if (format == "json") return bound_document(cfg, rows).dump(2) + "\n";
    std::string s = std::string(kReportCsvHeader) + "\n";
    for (const auto& row : rows) s += report_csv(row) + "\n";
    return s;
}

int cmd_bound(const CommonFlags& f, std::ostream& out) {
    const RunConfig cfg = make_config(f);
    const auto rows = compute_reports(cfg, state_of(cfg));
    emit(bound_text(cfg, rows, f.format), f.out, out);
    return kOk;
}

// scan

struct ScanFlags {
    std::string axis;
    std::string range;
};

struct ScanRow {
    double value = 0.0;
    std::vector<ReportRow> reports;
    std::optional<Window> windows[2];  // mermin, svetlichny
};

int cmd_scan(const CommonFlags& f, const ScanFlags& s, std::ostream& out) {
    const RunConfig base = make_config(f);
    if (s.axis != "strength_all" && s.axis != "visibility" && s.axis != "angle_x")
        throw ConfigError("axis", "expected strength_all, visibility or angle_x");
    const auto rg = parse_numbers(s.range, "range", 3);
    const double lo = rg[0], hi = rg[1];
    if (rg[2] < 1 || rg[2] != std::floor(rg[2]) || rg[2] > 1e6)
        throw ConfigError("range", "steps must be a positive integer");
    const int steps = static_cast<int>(rg[2]);

    std::vector<RunConfig> cfgs(static_cast<std::size_t>(steps), base);
    std::vector<double> values(cfgs.size());
    for (int i = 0; i < steps; ++i) {
        const double v = steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1);
        values[i] = v;
        RunConfig& c = cfgs[i];
        if (s.axis == "strength_all") {
            try {
                c.strengths = StrengthSextuple::uniform(v);
            } catch (const std::invalid_argument& e) {
                throw ConfigError("range", e.what());
            }
        } else if (s.axis == "visibility") {
            if (c.state.kind == states::StateSpec::Kind::mix) c.state.visibility = v;
            else c.state = states::StateSpec::mix(base.state, v);
        } else {
            const Angles a0 = base.angles.value_or(Angles::orthogonal());
            c.angles = Angles{v, a0.y, a0.z};
        }
        c.validate();
    }

    std::vector<ScanRow> rows(cfgs.size());
    parallel_for(cfgs.size(), [&](std::size_t i) {
        const CorrelationDecomposition d = state_of(cfgs[i]);
        rows[i].value = values[i];
        rows[i].reports = compute_reports(cfgs[i], d);
        if (s.axis == "strength_all" && states::is_tstate(d)) {
            const Vec3 sv = singular_values_3x9(d.t_matrix()).values;
            const double p = std::hypot(sv[0], sv[1]);
            if (p > 1) rows[i].windows[0] = mermin::biased_window(p);
            if (p > std::numbers::sqrt2) rows[i].windows[1] = svetlichny::biased_window(p);
        }
    });

    std::string text;
    if (f.format == "json") {
        json doc;
        doc["state"] = base.state_text;
        doc["config"] = config_json(base);
        doc["scan"] = {{"axis", s.axis}, {"lo", lo}, {"hi", hi}, {"steps", steps}};
        json jrows = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            json jr;
            jr["index"] = i;
            jr["value"] = rows[i].value;
            json reps = json::array();
            for (const auto& r : rows[i].reports) reps.push_back(report_json(r));
            jr["reports"] = reps;
            json win;
            for (int k = 0; k < 2; ++k) {
                const char* key = k == 0 ? "mermin" : "svetlichny";
                win[key] = rows[i].windows[k] ? json{{"r_biased", rows[i].windows[k]->r_biased},
                                                     {"r_unbiased", rows[i].windows[k]->r_unbiased}}
                                              : json(nullptr);
            }
            jr["windows"] = win;
            jrows.push_back(jr);
        }
        doc["rows"] = jrows;
        text = doc.dump(2) + "\n";
    } else {
        text = "index," + s.axis + "," + kReportCsvHeader + ",window_r_biased,window_r_unbiased\n";
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (const auto& r : rows[i].reports) {
                const auto& w = rows[i].windows[r.op == OperatorKind::mermin ? 0 : 1];
                text += std::to_string(i) + "," + format_double(rows[i].value) + "," + report_csv(r) + "," +
                        (w ? format_double(w->r_biased) : "") + "," + (w ? format_double(w->r_unbiased) : "") + "\n";
            }
    }
    emit(text, f.out, out);
    return kOk;
}

// verify

struct VerifyFlags {
    std::string suite;
    std::uint64_t seed = 0;
    int budget = 0;
    std::string out;
    std::string format = "json";
};

int cmd_verify(const VerifyFlags& f, std::ostream& out, std::ostream& err) {
    if (std::find(suite_names().begin(), suite_names().end(), f.suite) == suite_names().end())
        throw ConfigError("suite", "expected closed_form, tightness, brute_force_kl or invariance");
    if (f.format != "json" && f.format != "csv") throw ConfigError("format", "expected json or csv");
    if (f.budget < 0) throw ConfigError("budget", "must be >= 1");
    const int budget = f.budget == 0 ? default_budget(f.suite) : f.budget;
    const SuiteResult res = run_suite(f.suite, f.seed, budget);

    std::string text;
    if (f.format == "json") {
        json doc{{"suite", res.suite}, {"seed", res.seed}, {"budget", res.budget}, {"pass", res.pass()}};
        json props = json::array();
        for (const auto& p : res.properties)
            props.push_back({{"name", p.name},
                             {"max_deviation", p.max_deviation},
                             {"tolerance", p.tolerance},
                             {"instances", p.instances},
                             {"pass", p.pass()}});
        doc["properties"] = props;
        text = doc.dump(2) + "\n";
    } else {
        text = "suite,property,instances,max_deviation,tolerance,pass\n";
        for (const auto& p : res.properties)
            text += res.suite + "," + p.name + "," + std::to_string(p.instances) + "," + format_double(p.max_deviation) +
                    "," + format_double(p.tolerance) + "," + (p.pass() ? "true" : "false") + "\n";
    }
    emit(text, f.out, out);
    for (const auto& p : res.properties)
        if (!p.pass()) err << "FAIL " << res.suite << "/" << p.name << ": max deviation " << p.max_deviation << " > "
                           << p.tolerance << "\n";
    return res.pass() ? kOk : kPropertyFailure;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json bound_document(const RunConfig& cfg, const std::vector<ReportRow>& rows) {
    json doc;
    doc["state"] = cfg.state_text;
    doc["config"] = config_json(cfg);
    json reps = json::array();
    for (const auto& r : rows) reps.push_back(report_json(r));
    doc["reports"] = reps;
    return doc;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum bounds on Mermin and Svetlichny operators for biased, weak measurements"};
    app.require_subcommand(1);

    CommonFlags bound_flags, scan_flags;
    ScanFlags scan_extra;
    VerifyFlags verify_flags;

    CLI::App* bound = app.add_subcommand("bound", "closed-form bounds for one configuration");
    add_common(bound, bound_flags);
    CLI::App* scan = app.add_subcommand("scan", "bounds along a strength, visibility or angle grid");
    add_common(scan, scan_flags);
    scan->add_option("--axis", scan_extra.axis, "strength_all | visibility | angle_x")->required();
    scan->add_option("--range", scan_extra.range, "lo,hi,steps")->required();
    CLI::App* verify = app.add_subcommand("verify", "seeded property suites");
    verify->add_option("suite,--suite", verify_flags.suite, "closed_form | tightness | brute_force_kl | invariance")
        ->required();
    verify->add_option("--seed", verify_flags.seed, "seed");
    verify->add_option("--budget", verify_flags.budget, "instances (default per suite)");
    verify->add_option("--out", verify_flags.out, "output file (default stdout)");
    verify->add_option("--format", verify_flags.format, "json | csv");

    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }

    try {
        if (bound->parsed()) return cmd_bound(bound_flags, out);
        if (scan->parsed()) return cmd_scan(scan_flags, scan_extra, out);
        return cmd_verify(verify_flags, out, err);
    } catch (const IncompatibleError& e) {
        err << "incompatible: " << e.what() << "\n";
        return kIncompatible;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kPropertyFailure;
    }
}

}  // namespace bellbound::cli
