// quadbound: audited quadrature error bounds on the command line.
//
// Subcommands: integrate (certified adaptive quadrature), bound (evaluate
// one inequality case on a function), hayashi (check the two-sided
// Steffensen/Hayashi bracket), audit (counterexample search), sharpness
// (coarse constants vs observed deviations as CSV).
//
// Exit codes: 0 success; 2 input or precondition error; 3 budget or
// convergence failure; 4 a gated check found a violation (audit with any
// verdict other than no-violation-found, hayashi fail).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "quadbound/audit.hpp"
#include "quadbound/certquad.hpp"
#include "quadbound/claims.hpp"
#include "quadbound/expr.hpp"
#include "quadbound/hayashi.hpp"
#include "quadbound/oracle.hpp"
#include "quadbound/sharpness.hpp"

namespace qb = quadbound;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitViolation = 4;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ------------------------------------------------------- config file

struct FileDefaults {
    double tol = 0.0;
    bool has_tol = false;
    int samples = 0;
    bool has_samples = false;
    std::uint64_t seed = 0;
    bool has_seed = false;
    int threads = 0;
    bool has_threads = false;
    double inflation = 0.0;
    bool has_inflation = false;
};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// `key = value` lines; blank lines and #-comments ignored; unknown keys
// are errors, matching the strict flag policy.
FileDefaults load_config(const std::string& path) {
    FileDefaults d;
    std::ifstream in(path);
    if (!in) throw qb::Error("cannot open config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw qb::Error(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        try {
            if (key == "tol") {
                d.tol = std::stod(value);
                d.has_tol = true;
            } else if (key == "samples") {
                d.samples = std::stoi(value);
                d.has_samples = true;
            } else if (key == "seed") {
                d.seed = std::stoull(value);
                d.has_seed = true;
            } else if (key == "threads") {
                d.threads = std::stoi(value);
                d.has_threads = true;
            } else if (key == "inflation") {
                d.inflation = std::stod(value);
                d.has_inflation = true;
            } else {
                throw qb::Error(path + ":" + std::to_string(lineno) + ": unknown key '" + key +
                                "'");
            }
        } catch (const std::invalid_argument&) {
            throw qb::Error(path + ":" + std::to_string(lineno) + ": bad value for '" + key +
                            "'");
        }
    }
    return d;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw qb::Error("cannot open output file " + path);
    out << content;
}

// --------------------------------------------------------- integrate

struct IntegrateArgs {
    std::string expr;
    double a = 0.0;
    double b = 1.0;
    double tol = 1e-6;
    int max_sub = 16384;
    bool json = false;
};

int run_integrate(const IntegrateArgs& args) {
    const qb::Interval iv = qb::make_interval(args.a, args.b);
    const qb::FunctionModel g = qb::make_function_model(args.expr, iv);
    qb::CertifyConfig cfg;
    cfg.max_subintervals = args.max_sub;
    const qb::CertifiedResult r = qb::certify(g, iv, args.tol, cfg);
    if (args.json) {
        std::string out = "{\"estimate\":" + fmt17(r.estimate);
        out += ",\"radius\":" + fmt17(r.radius);
        out += ",\"subintervals\":" + std::to_string(r.subintervals);
        out += ",\"evaluations\":" + std::to_string(r.evaluations);
        out += ",\"provenance\":\"" + std::string(qb::provenance_name(r.bound_provenance)) + "\"";
        out += ",\"within_tolerance\":" + std::string(r.within_tolerance ? "true" : "false");
        out += ",\"tol\":" + fmt17(args.tol) + "}\n";
        std::cout << out;
    } else {
        std::cout << "estimate      " << fmt6(r.estimate) << "\n"
                  << "radius        " << fmt6(r.radius) << "\n"
                  << "subintervals  " << r.subintervals << "\n"
                  << "evaluations   " << r.evaluations << "\n"
                  << "provenance    " << qb::provenance_name(r.bound_provenance) << "\n"
                  << "within tol    " << (r.within_tolerance ? "yes" : "NO") << " (tol "
                  << fmt6(args.tol) << ")\n";
    }
    return r.within_tolerance ? kExitOk : kExitBudget;
}

// ------------------------------------------------------------- bound

struct BoundArgs {
    std::string case_name;
    std::string expr;
    double a = 0.0;
    double b = 1.0;
    double x = 0.0;
    std::optional<double> gamma;
    std::optional<double> Gamma;
    double inflation = 0.05;
    bool json = false;
};

int run_bound(const BoundArgs& args) {
    const auto c = qb::parse_case(args.case_name);
    if (!c) throw qb::Error("unknown case '" + args.case_name + "'");
    const qb::Interval iv = qb::make_interval(args.a, args.b);
    const qb::FunctionModel g = qb::make_function_model(args.expr, iv);

    qb::DerivativeBounds db;
    if (args.gamma.has_value() != args.Gamma.has_value())
        throw qb::Error("--gamma and --Gamma must be supplied together");
    if (args.gamma) {
        db = qb::make_bounds(*args.gamma, *args.Gamma, qb::Provenance::Asserted);
    } else {
        db = qb::derivative_range(g.deriv, iv, 1024, args.inflation);
    }

    // Two-pass oracle call: a rough value sets the absolute tolerance so the
    // mean integral is accurate to ~1e-11 relative.
    const double rough = qb::integrate(g.eval, iv, 1e-6 * std::max(1.0, iv.width())).value;
    const double tol = 1e-11 * std::max(1.0, std::fabs(rough));
    const double mean = qb::integrate(g.eval, iv, tol).value / iv.width();

    const qb::BoundEvaluation ev = qb::evaluate_claim(*c, g, iv, args.x, db, mean);
    const bool violated_primary = ev.slack_primary < 0.0;
    const bool violated_coarse = ev.slack_coarse < 0.0;

    if (args.json) {
        std::string out = "{\"case\":\"" + std::string(qb::case_name(ev.tag)) + "\"";
        out += ",\"status\":\"" + std::string(qb::status_name(ev.status)) + "\"";
        out += ",\"x\":" + fmt17(ev.x);
        out += ",\"mean_integral\":" + fmt17(mean);
        out += ",\"rule_value\":" + fmt17(ev.rule_value);
        out += ",\"lhs\":" + fmt17(ev.lhs);
        out += ",\"half_width_primary\":" + fmt17(ev.half_width_primary);
        out += ",\"half_width_coarse\":" + fmt17(ev.half_width_coarse);
        out += ",\"slack_primary\":" + fmt17(ev.slack_primary);
        out += ",\"slack_coarse\":" + fmt17(ev.slack_coarse);
        out += ",\"bracket_low\":" + fmt17(ev.bracket_low);
        out += ",\"bracket_high\":" + fmt17(ev.bracket_high);
        out += ",\"window\":" + fmt17(ev.window);
        out += ",\"gamma\":" + fmt17(ev.bounds_used.lo);
        out += ",\"Gamma\":" + fmt17(ev.bounds_used.hi);
        out += ",\"provenance\":\"" +
               std::string(qb::provenance_name(ev.bounds_used.provenance)) + "\"";
        out += ",\"violated_primary\":" + std::string(violated_primary ? "true" : "false");
        out += ",\"violated_coarse\":" + std::string(violated_coarse ? "true" : "false");
        out += "}\n";
        std::cout << out;
    } else {
        std::cout << "case          " << qb::case_name(ev.tag) << " ["
                  << qb::status_name(ev.status) << "]\n"
                  << "x             " << fmt6(ev.x) << "\n"
                  << "rule value    " << fmt6(ev.rule_value) << "\n"
                  << "lhs           " << fmt6(ev.lhs) << "\n"
                  << "half-width    " << fmt6(ev.half_width_primary) << " (primary)  "
                  << fmt6(ev.half_width_coarse) << " (coarse)\n"
                  << "slack         " << fmt6(ev.slack_primary)
                  << (violated_primary ? " (primary: VIOLATED)" : " (primary: holds)") << "  "
                  << fmt6(ev.slack_coarse)
                  << (violated_coarse ? " (coarse: VIOLATED)" : " (coarse: holds)") << "\n"
                  << "window        " << fmt6(ev.window) << "\n"
                  << "bounds        [" << fmt6(ev.bounds_used.lo) << ", "
                  << fmt6(ev.bounds_used.hi) << "] ("
                  << qb::provenance_name(ev.bounds_used.provenance) << ")\n";
    }
    return kExitOk;
}

// ----------------------------------------------------------- hayashi

struct HayashiArgs {
    std::string p_expr;
    std::string h_expr;
    double A = 1.0;
    double a = 0.0;
    double b = 1.0;
    double tol = 1e-10;
    bool json = false;
};

int run_hayashi(const HayashiArgs& args) {
    const qb::Interval iv = qb::make_interval(args.a, args.b);
    const qb::FunctionModel p = qb::make_function_model(args.p_expr, iv);
    const qb::FunctionModel h = qb::make_function_model(args.h_expr, iv);
    const qb::HayashiCheck check = qb::check_hayashi(p, h, args.A, iv, args.tol);
    const qb::HayashiTriple& t = check.triple;
    if (args.json) {
        std::string out = "{\"lambda\":" + fmt17(t.lambda);
        out += ",\"lower\":" + fmt17(t.lower);
        out += ",\"middle\":" + fmt17(t.middle);
        out += ",\"upper\":" + fmt17(t.upper);
        out += ",\"margin_lower\":" + fmt17(t.margin_lower());
        out += ",\"margin_upper\":" + fmt17(t.margin_upper());
        out += ",\"pass\":" + std::string(check.pass ? "true" : "false");
        out += ",\"tol\":" + fmt17(args.tol) + "}\n";
        std::cout << out;
    } else {
        std::cout << "lambda   " << fmt6(t.lambda) << "\n"
                  << "lower    " << fmt6(t.lower) << "\n"
                  << "middle   " << fmt6(t.middle) << "\n"
                  << "upper    " << fmt6(t.upper) << "\n"
                  << "margins  " << fmt6(t.margin_lower()) << " (lower)  "
                  << fmt6(t.margin_upper()) << " (upper)\n"
                  << "pass     " << (check.pass ? "yes" : "NO") << "\n";
    }
    return check.pass ? kExitOk : kExitViolation;
}

// ------------------------------------------------------------- audit

struct AuditArgs {
    std::string case_name;
    std::string family = "dprofile";
    int samples = 100;
    std::uint64_t seed = 0;
    std::string out_path;
    bool csv = false;
    int threads = 0;
};

int run_audit(const AuditArgs& args) {
    const auto c = qb::parse_case(args.case_name);
    if (!c) throw qb::Error("unknown case '" + args.case_name + "'");
    const auto family = qb::parse_family(args.family);
    if (!family) throw qb::Error("unknown family '" + args.family + "'");

    qb::AuditConfig cfg;
    cfg.samples = args.samples;
    cfg.seed = args.seed;
    cfg.threads = args.threads > 0
                      ? args.threads
                      : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const qb::AuditReport report = qb::audit(*c, *family, cfg);
    const std::string text =
        args.csv ? qb::report_to_csv(report) : qb::report_to_json(report);
    if (args.out_path.empty()) {
        std::cout << text;
    } else {
        write_file(args.out_path, text);
    }
    std::cerr << qb::case_name(report.tag) << "/" << qb::family_name(report.family)
              << ": verdict " << qb::verdict_name(report.verdict) << " (worst primary "
              << fmt6(report.worst_violation_primary) << ", coarse "
              << fmt6(report.worst_violation_coarse) << ")\n";
    return report.verdict == qb::AuditVerdict::NoViolationFound ? kExitOk : kExitViolation;
}

// --------------------------------------------------------- sharpness

struct SharpnessArgs {
    std::string cases = "all";
    double a = 0.0;
    double b = 1.0;
    std::string out_path;
};

int run_sharpness(const SharpnessArgs& args) {
    const qb::Interval iv = qb::make_interval(args.a, args.b);
    std::vector<qb::InequalityCase> cases;
    if (args.cases == "all") {
        cases = {qb::InequalityCase::T3, qb::InequalityCase::C1, qb::InequalityCase::T4,
                 qb::InequalityCase::C2, qb::InequalityCase::T5, qb::InequalityCase::C3,
                 qb::InequalityCase::DW, qb::InequalityCase::GS};
    } else {
        std::stringstream ss(args.cases);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto c = qb::parse_case(trim(item));
            if (!c) throw qb::Error("unknown case '" + item + "'");
            cases.push_back(*c);
        }
        if (cases.empty()) throw qb::Error("no cases selected");
    }
    const auto corpus = qb::normalized_corpus(iv);
    const auto rows = qb::sharpness_table(cases, corpus, iv);
    const std::string csv = qb::sharpness_to_csv(rows);
    if (args.out_path.empty())
        std::cout << csv;
    else
        write_file(args.out_path, csv);
    return kExitOk;
}

int dispatch(int argc, char** argv) {
    // The config file must be read before CLI11 applies flag defaults.
    std::string config_path = "quadbound.conf";
    bool config_explicit = false;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            config_path = argv[i + 1];
            config_explicit = true;
        }
    }
    FileDefaults file;
    if (config_explicit || std::filesystem::exists(config_path)) file = load_config(config_path);

    CLI::App app{"audited quadrature error bounds"};
    app.require_subcommand(1);
    std::string config_dummy;
    app.add_option("--config", config_dummy, "config file of key = value lines")
        ->configurable(false);

    IntegrateArgs integrate_args;
    if (file.has_tol) integrate_args.tol = file.tol;
    auto* cmd_integrate =
        app.add_subcommand("integrate", "certified adaptive quadrature (weighted-endpoint bound)");
    cmd_integrate->add_option("--expr", integrate_args.expr, "integrand g(x)")->required();
    cmd_integrate->add_option("--a", integrate_args.a, "left endpoint")->required();
    cmd_integrate->add_option("--b", integrate_args.b, "right endpoint")->required();
    cmd_integrate->add_option("--tol", integrate_args.tol, "target radius");
    cmd_integrate->add_option("--max-sub", integrate_args.max_sub, "subinterval budget");
    cmd_integrate->add_flag("--json", integrate_args.json, "JSON on stdout");

    BoundArgs bound_args;
    if (file.has_inflation) bound_args.inflation = file.inflation;
    auto* cmd_bound = app.add_subcommand("bound", "evaluate one inequality case on a function");
    cmd_bound->add_option("--case", bound_args.case_name, "T3|C1|T4|C2|T5|C3|DW|GS")->required();
    cmd_bound->add_option("--expr", bound_args.expr, "function g(x)")->required();
    cmd_bound->add_option("--a", bound_args.a, "left endpoint")->required();
    cmd_bound->add_option("--b", bound_args.b, "right endpoint")->required();
    cmd_bound->add_option("--x", bound_args.x, "evaluation point")->required();
    double gamma_in = 0.0, Gamma_in = 0.0;
    auto* gamma_opt = cmd_bound->add_option("--gamma", gamma_in, "asserted lower bound on g'");
    auto* Gamma_opt = cmd_bound->add_option("--Gamma", Gamma_in, "asserted upper bound on g'");
    cmd_bound->add_option("--inflation", bound_args.inflation, "sampling inflation");
    cmd_bound->add_flag("--json", bound_args.json, "JSON on stdout");

    HayashiArgs hayashi_args;
    if (file.has_tol) hayashi_args.tol = file.tol;
    auto* cmd_hayashi = app.add_subcommand("hayashi", "check the two-sided Steffensen bracket");
    cmd_hayashi->set_help_flag("--help", "print help");  // frees -h for the --h operand
    cmd_hayashi->add_option("--p", hayashi_args.p_expr, "nonincreasing p(x)")->required();
    cmd_hayashi->add_option("--h", hayashi_args.h_expr, "h(x) in [0, A]")->required();
    cmd_hayashi->add_option("--A", hayashi_args.A, "upper bound A on h")->required();
    cmd_hayashi->add_option("--a", hayashi_args.a, "left endpoint")->required();
    cmd_hayashi->add_option("--b", hayashi_args.b, "right endpoint")->required();
    cmd_hayashi->add_option("--tol", hayashi_args.tol, "oracle tolerance");
    cmd_hayashi->add_flag("--json", hayashi_args.json, "JSON on stdout");

    AuditArgs audit_args;
    if (file.has_samples) audit_args.samples = file.samples;
    if (file.has_seed) audit_args.seed = file.seed;
    if (file.has_threads) audit_args.threads = file.threads;
    auto* cmd_audit = app.add_subcommand("audit", "search a family for claim violations");
    cmd_audit->add_option("--case", audit_args.case_name, "T3|C1|T4|C2|T5|C3|DW|GS")->required();
    cmd_audit->add_option("--family", audit_args.family, "canonical|quadratic|dprofile|all");
    cmd_audit->add_option("--samples", audit_args.samples, "family members to scan");
    cmd_audit->add_option("--seed", audit_args.seed, "sampling seed");
    cmd_audit->add_option("--out", audit_args.out_path, "report file (stdout if omitted)");
    cmd_audit->add_flag("--csv", audit_args.csv, "CSV instead of JSON");
    cmd_audit->add_option("--threads", audit_args.threads, "scan workers (default: cores)");

    SharpnessArgs sharpness_args;
    auto* cmd_sharpness =
        app.add_subcommand("sharpness", "coarse constants vs observed deviations (CSV)");
    cmd_sharpness->add_option("--cases", sharpness_args.cases, "'all' or comma-separated tags");
    cmd_sharpness->add_option("--a", sharpness_args.a, "left endpoint");
    cmd_sharpness->add_option("--b", sharpness_args.b, "right endpoint");
    cmd_sharpness->add_option("--out", sharpness_args.out_path, "CSV file (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    }

    if (cmd_integrate->parsed()) return run_integrate(integrate_args);
    if (cmd_bound->parsed()) {
        if (gamma_opt->count()) bound_args.gamma = gamma_in;
        if (Gamma_opt->count()) bound_args.Gamma = Gamma_in;
        return run_bound(bound_args);
    }
    if (cmd_hayashi->parsed()) return run_hayashi(hayashi_args);
    if (cmd_audit->parsed()) return run_audit(audit_args);
    if (cmd_sharpness->parsed()) return run_sharpness(sharpness_args);
    return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const qb::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitInput;
    } catch (const qb::NoConvergence& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return kExitBudget;
    } catch (const qb::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
