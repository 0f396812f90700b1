#pragma once

// Command-line front end.  run_cli parses arguments, runs one command and
// writes its output once at the end; exit codes are 0 (success, attained,
// or refused by marker), 1 (verification failure) and 2 (usage).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "codes.hpp"
#include "potentials.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "verify.hpp"

namespace sharpcode {

enum Exit { exit_ok = 0, exit_fail = 1, exit_usage = 2 };

struct RunConfig {
    std::string command;
    std::vector<std::string> codes;
    std::string h;
    std::string level;
    std::string mode;  // empty: full up to N = 5000, sampled beyond
    int restarts = -1;
    std::uint64_t seed = 42;
    std::string format = "json";
    std::string out = "-";
    bool timestamps = true;

    // quadrature
    std::string kind;
    int n = 0, tau = 0, k = 0;
    double N = 0;
    int table = 0;
};

inline std::vector<std::string> table_codes() {
    return {"ngon(5)",    "ngon(6)",    "simplex(3)", "cross_polytope(3)", "cube",        "icosahedron",
            "dodecahedron", "c_5_16_3", "c_6_27_4",   "c_7_56_5",          "e8_240",      "c_21_112_3",
            "c_21_162_3", "c_22_100_3", "c_22_275_4", "c_22_891_5",        "c_23_552_5",  "c_23_4600_7",
            "leech_196560", "cell_600"};
}

namespace detail {

inline std::string num(double v) {
    char buf[40];
    if (std::fabs(v - std::round(v)) < 1e-9 && std::fabs(v) < 1e15)
        std::snprintf(buf, sizeof buf, "%.0f", v);
    else
        std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// "c0 h(a0) + c1 h(a1) + ..."
inline std::string terms(const std::vector<double>& counts, const std::vector<double>& nodes) {
    std::string s;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i) s += " + ";
        s += num(counts[i]) + " h(" + num(nodes[i]) + ")";
    }
    return s;
}

inline Mode mode_for(const RunConfig& cfg, const SphericalCode& C) {
    if (!cfg.mode.empty()) return parse_mode(cfg.mode);
    return C.N <= 5000 ? Mode::full : Mode::sampled;
}

struct Output {
    json rows = json::array();
    std::ostringstream text;
    bool ok = true;
};

inline CheckOptions options_from(const RunConfig& cfg, bool search_by_default) {
    CheckOptions o;
    o.search = search_by_default || cfg.restarts >= 0;
    o.restarts = cfg.restarts;
    o.seed = cfg.seed;
    return o;
}

inline void bound_row(Output& o, const RunConfig& cfg, const std::string& name, BoundLevel level,
                      const Potential& h, json extra = json::object()) {
    try {
        const BoundReport r = attainment_check(name, level, h, options_from(cfg, false));
        json j = to_json(r, cfg.timestamps);
        for (auto& [k, v] : extra.items()) j[k] = v;
        o.rows.push_back(j);
        const bool good = r.attained && r.search_ok;
        o.ok = o.ok && good;
        o.text << r.code << " (n=" << r.n << ", N=" << r.N << ")  " << terms(r.expected_counts, r.nodes)
               << "\n    bound " << num(r.bound) << "  witness " << num(r.witness_value) << "  gap "
               << fmt_g(r.gap) << "  " << (good ? "attained" : "NOT ATTAINED");
        for (auto& [k, v] : extra.items()) o.text << "  " << k << " " << v.dump();
        o.text << "\n";
    } catch (const Refused& e) {
        o.rows.push_back(refusal_json(name, to_string(level), h.spec, e.what()));
        o.text << name << "  *  not attained at this level (" << e.what() << ")\n";
    }
}

inline void table1(Output& o, const RunConfig& cfg, const Potential& h, const std::vector<std::string>& names) {
    for (const auto& name : names) {
        const CodePtr C = build_code(name);
        if (!C->sharp) continue;
        const auto& rule = levenshtein_1_over_N(C->n, double(C->N), C->tau);
        const double N = double(C->N);
        const double bound = energy_bound_per_point(rule, h, N);
        const auto e = energy(*C, h, mode_for(cfg, *C));
        const double rel = std::fabs(e.per_point - bound) / scale_of(bound);
        std::vector<double> counts;
        for (double w : rule.weights) counts.push_back(N * w);
        bool counts_ok = counts.size() == C->distribution.size();
        for (std::size_t i = 0; counts_ok && i < counts.size(); ++i)
            counts_ok = std::fabs(counts[i] - double(C->distribution[i].count)) < 1e-6 &&
                        std::fabs(rule.nodes[i] - C->distribution[i].value) < 1e-8;
        const bool good = rel <= 1e-9 && counts_ok;
        o.ok = o.ok && good;
        json j;
        j["schema"] = schema;
        j["code"] = C->name;
        j["n"] = C->n;
        j["N"] = C->N;
        j["strength"] = C->tau;
        j["potential"] = h.spec;
        j["nodes"] = rule.nodes;
        j["counts"] = counts;
        j["bound_per_point"] = bound;
        j["energy_per_point"] = e.per_point;
        j["mode"] = e.mode == Mode::full ? "full" : "sampled";
        j["relative_gap"] = rel;
        j["attained"] = good;
        o.rows.push_back(j);
        o.text << C->name << " (n=" << C->n << ", N=" << C->N << ", tau=" << C->tau << ")  E/N = "
               << terms(counts, rule.nodes) << "\n    bound " << num(bound) << "  energy " << num(e.per_point)
               << "  gap " << fmt_g(rel) << "  " << (good ? "attained" : "NOT ATTAINED") << "\n";
    }
}

inline Output tables(const RunConfig& cfg) {
    const std::string spec = !cfg.h.empty() ? cfg.h : (cfg.table == 4 ? "riesz:-1" : "riesz:1");
    const Potential h = parse_potential(spec);
    const auto names = cfg.codes.empty() ? table_codes() : cfg.codes;
    Output o;
    switch (cfg.table) {
        case 1: table1(o, cfg, h, names); break;
        case 2:
            for (const auto& nm : names) bound_row(o, cfg, nm, BoundLevel::first_i, h);
            break;
        case 3:
            for (const auto& nm : names) {
                const CodePtr C = build_code(nm);
                if (!C->find_witness(Role::second_level)) continue;
                const double first = pulb_value(pulb_case_i(C->n, C->tau), h, double(C->N));
                bound_row(o, cfg, nm, BoundLevel::second, h, json{{"first_level_bound", first}});
                if (!o.rows.back().contains("bound") || !(o.rows.back()["bound"].get<double>() > first)) o.ok = false;
            }
            break;
        case 4:
            for (const auto& nm : names) {
                bound_row(o, cfg, nm, BoundLevel::first_ii, h);
                if (build_code(nm)->find_witness(Role::cell600))
                    bound_row(o, cfg, nm, BoundLevel::cell600, trunc_exp(1.0));
            }
            break;
        default: throw InvalidArgument("tables: expected 1, 2, 3 or 4");
    }
    return o;
}

inline json design_json(const std::vector<DegreeCheck>& d, bool& pass) {
    json a = json::array();
    for (const auto& c : d) {
        a.push_back({{"degree", c.degree}, {"residual", c.residual}, {"threshold", c.threshold}, {"pass", c.pass}});
        pass = pass && c.pass;
    }
    return a;
}

}  // namespace detail

inline int cmd_tables(const RunConfig& cfg, std::ostream& out) {
    auto o = detail::tables(cfg);
    if (cfg.format == "text")
        out << o.text.str();
    else
        out << json{{"schema", schema}, {"table", cfg.table}, {"rows", o.rows}, {"pass", o.ok}}.dump(2) << '\n';
    return o.ok ? exit_ok : exit_fail;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const std::string name = cfg.codes.at(0);
    const CodePtr C = build_code(name);
    const BoundLevel level = parse_level(cfg.level);
    const Potential h = parse_potential(cfg.h.empty() ? (level == BoundLevel::first_ii ? "riesz:-1" : "riesz:1")
                                                      : cfg.h);
    json j;
    bool ok = true;
    try {
        const BoundReport r = attainment_check(name, level, h, detail::options_from(cfg, true));
        j = to_json(r, cfg.timestamps);
        ok = r.attained && r.search_ok;
    } catch (const Refused& e) {
        j = refusal_json(C->name, cfg.level, h.spec, e.what());
    }
    const Mode mode = detail::mode_for(cfg, *C);
    bool design = true;
    j["design"] = {{"mode", mode == Mode::full ? "full" : "sampled"},
                   {"degrees", detail::design_json(design_certificate(*C, C->T, mode), design)}};
    ok = ok && design;
    if (cfg.format == "text") {
        if (j.contains("refused"))
            out << C->name << ": refused: " << j["reason"].get<std::string>() << '\n';
        else
            out << C->name << " " << cfg.level << " " << h.spec << ": bound " << detail::num(j["bound"])
                << ", witness " << detail::num(j["witness_value"]) << ", " << (ok ? "attained" : "NOT ATTAINED")
                << '\n';
    } else {
        out << j.dump(2) << '\n';
    }
    return ok ? exit_ok : exit_fail;
}

inline int cmd_quadrature(const RunConfig& cfg, std::ostream& out) {
    const RuleKind kind = parse_rule_kind(cfg.kind);
    const auto need = [](bool have, const char* what) {
        if (!have) throw InvalidArgument(std::string("quadrature: missing ") + what);
    };
    need(cfg.n >= 2, "--n");
    const QuadratureRule* r = nullptr;
    switch (kind) {
        case RuleKind::pulb_i: need(cfg.tau > 0, "--tau"); r = &pulb_case_i(cfg.n, cfg.tau); break;
        case RuleKind::pulb_ii: need(cfg.tau > 0, "--tau"); r = &pulb_case_ii(cfg.n, cfg.tau); break;
        case RuleKind::gauss: need(cfg.k > 0, "--k"); r = &gauss(cfg.n, cfg.k); break;
        case RuleKind::levenshtein:
            need(cfg.tau > 0, "--tau");
            need(cfg.N > 0, "--N");
            r = &levenshtein_1_over_N(cfg.n, cfg.N, cfg.tau);
            break;
        case RuleKind::skip1add2: need(cfg.k > 0, "--k"); r = &skip1add2(cfg.n, cfg.k); break;
    }
    const double residual = verify_exactness(*r, true, cfg.seed);
    if (cfg.format == "text") {
        char buf[64];
        for (std::size_t i = 0; i < r->nodes.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g  %.17g", r->nodes[i], r->weights[i]);
            out << buf << '\n';
        }
        std::snprintf(buf, sizeof buf, "residual %.3g", residual);
        out << buf << '\n';
    } else {
        out << to_json(*r, residual).dump(2) << '\n';
    }
    return residual <= 1e-10 ? exit_ok : exit_fail;
}

inline int cmd_export(const RunConfig& cfg, std::ostream& out) {
    const CodePtr C = build_code(cfg.codes.at(0));
    const std::string fmt = cfg.format == "json" || cfg.format == "csv" ? cfg.format : "csv";
    if (cfg.out == "-") {
        export_points(*C, fmt, out);
        return exit_ok;
    }
    std::ofstream f(cfg.out);
    if (!f) throw Error("export: cannot open '" + cfg.out + "' for writing");
    export_points(*C, fmt, f);
    f.close();
    if (!f) throw Error("export: write to '" + cfg.out + "' failed");
    return exit_ok;
}

inline int cmd_codes_list(const RunConfig& cfg, std::ostream& out) {
    std::vector<std::string> names = catalog_names();
    if (cfg.format == "text") {
        for (const auto& nm : names) out << nm << '\n';
        return exit_ok;
    }
    json a = json::array();
    for (const auto& nm : names) {
        if (nm.find('(') != std::string::npos) {
            a.push_back({{"name", nm}, {"family", true}});
            continue;
        }
        a.push_back(to_json(*build_code(nm)));
    }
    out << json{{"schema", schema}, {"codes", a}}.dump(2) << '\n';
    return exit_ok;
}

// Output is buffered and written once; with --out it goes to that file.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sharp spherical codes: quadrature rules, constructions and bound verification", "sharpcode"};
    app.require_subcommand(1);
    RunConfig cfg;
    const auto common = [&](CLI::App* c) {
        c->add_option("--format", cfg.format, "json, text or csv");
        c->add_option("--out", cfg.out, "output file (default stdout)");
        c->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    };
    const auto bounds = [&](CLI::App* c) {
        c->set_help_flag("--help", "print this help message and exit");  // frees -h/--h for the potential
        c->add_option("--h", cfg.h, "potential: riesz:<s>, log, exp:<a>, trunc_exp:<a>");
        c->add_option("--mode", cfg.mode, "full or sampled");
        c->add_option("--restarts", cfg.restarts, "random starts for the minimum search");
        c->add_flag("!--no-timestamps", cfg.timestamps, "omit timestamps from reports");
    };

    auto* tab = app.add_subcommand("tables", "recompute a table of bounds (1 energy, 2 case i, 3 second level, 4 case ii)");
    tab->add_option("which", cfg.table)->required()->check(CLI::Range(1, 4));
    tab->add_option("--code", cfg.codes, "restrict to these codes");
    common(tab);
    bounds(tab);

    auto* ver = app.add_subcommand("verify", "check that a code attains a bound at its witness");
    ver->add_option("code", cfg.codes)->required()->expected(1);
    ver->add_option("--level", cfg.level, "first_i, first_ii, second or cell600")->required();
    common(ver);
    bounds(ver);

    auto* quad = app.add_subcommand("quadrature", "construct a quadrature rule");
    quad->add_option("kind", cfg.kind, "pulb_i, pulb_ii, gauss, levenshtein, skip1add2")->required();
    quad->add_option("--n", cfg.n, "dimension")->required();
    quad->add_option("--tau", cfg.tau, "strength");
    quad->add_option("--k", cfg.k, "number of nodes parameter");
    quad->add_option("--N", cfg.N, "code size (levenshtein)");
    common(quad);

    auto* exp = app.add_subcommand("export", "write the points of a code");
    exp->add_option("code", cfg.codes)->required()->expected(1);
    common(exp);

    auto* codes = app.add_subcommand("codes", "catalog commands");
    codes->require_subcommand(1);
    auto* list = codes->add_subcommand("list", "list catalog codes");
    common(list);

    std::vector<std::string> argv_s{"sharpcode"};
    argv_s.insert(argv_s.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (auto& s : argv_s) argv.push_back(s.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << "run 'sharpcode --help' for usage\n";
        return exit_usage;
    }

    std::ostringstream buf;
    int code = exit_ok;
    try {
        if (*tab) {
            if (cfg.format == "csv") cfg.format = "json";
            code = cmd_tables(cfg, buf);
        } else if (*ver) {
            code = cmd_verify(cfg, buf);
        } else if (*quad) {
            code = cmd_quadrature(cfg, buf);
        } else if (*exp) {
            if (!exp->count("--format")) cfg.format = "csv";
            code = cmd_export(cfg, buf);
        } else if (*list) {
            code = cmd_codes_list(cfg, buf);
        }
    } catch (const InvalidArgument& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_fail;
    }
    if (cfg.out != "-" && !*exp) {
        std::ofstream f(cfg.out);
        if (!(f << buf.str())) {
            err << "error: cannot write '" << cfg.out << "'\n";
            return exit_fail;
        }
    } else {
        out << buf.str();
    }
    return code;
}

}  // namespace sharpcode
