#include "quadbound/audit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

#include "quadbound/oracle.hpp"

namespace quadbound {
namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Candidate {
    double value = -std::numeric_limits<double>::infinity();
    int index = -1;
    std::vector<double> theta;
    double x = 0.0;
};

// Strict "A is preferred over B": larger violation, then smaller x, then
// lexicographically smaller theta, then smaller sample index.
bool better(const Candidate& a, const Candidate& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.x != b.x) return a.x < b.x;
    if (a.theta != b.theta) return a.theta < b.theta;
    return a.index < b.index;
}

struct ScanResult {
    Candidate primary;
    Candidate coarse;
    double min_width_primary = std::numeric_limits<double>::infinity();
};

struct Objective {
    InequalityCase tag;
    const FamilyConfig* family;
    std::uint64_t seed;
    double oracle_tol;
    bool use_coarse;

    double mean_of(const FamilyMember& m) const {
        return integrate(m.model.eval, m.model.domain, oracle_tol, m.kinks).value /
               m.model.domain.width();
    }

    double violation_at(const FamilyMember& m, double mean, double x) const {
        const BoundEvaluation ev =
            evaluate_claim(tag, m.model, m.model.domain, x, m.bounds, mean);
        return use_coarse ? -ev.slack_coarse : -ev.slack_primary;
    }
};

ScanResult scan_member(InequalityCase tag, const FamilyConfig& family, std::uint64_t seed,
                       int index, const AuditConfig& config) {
    const FamilyMember m = sample_family(family, seed, index);
    const Interval adm = admissible_x(tag, m.model.domain);
    const double mean =
        integrate(m.model.eval, m.model.domain, config.oracle_tol, m.kinks).value /
        m.model.domain.width();

    ScanResult out;
    out.primary.index = out.coarse.index = index;
    out.primary.theta = out.coarse.theta = m.theta;
    const int grid = std::max(2, config.x_grid);
    for (int i = 0; i < grid; ++i) {
        const double x = adm.a + (adm.b - adm.a) * i / (grid - 1.0);
        const BoundEvaluation ev = evaluate_claim(tag, m.model, m.model.domain, x, m.bounds, mean);
        out.min_width_primary = std::min(out.min_width_primary, ev.half_width_primary);
        Candidate cp{-ev.slack_primary, index, m.theta, x};
        Candidate cc{-ev.slack_coarse, index, m.theta, x};
        if (better(cp, out.primary)) out.primary = std::move(cp);
        if (better(cc, out.coarse)) out.coarse = std::move(cc);
    }
    return out;
}

// Coordinate descent over (theta, x) with halving steps. Probes are taken
// minus-first so exact ties resolve toward smaller coordinates.
Candidate climb(Candidate start, const Objective& obj, const AuditConfig& config) {
    const ThetaBox box = theta_box(*obj.family, start.index);
    FamilyMember member = member_from_theta(*obj.family, obj.seed, start.index, start.theta);
    const Interval adm = admissible_x(obj.tag, member.model.domain);
    double mean = obj.mean_of(member);

    Candidate cur = start;
    cur.value = obj.violation_at(member, mean, cur.x);

    double x_step = (adm.b - adm.a) / 64.0;
    std::vector<double> t_step(cur.theta.size(), 0.0);
    if (!box.frozen)
        for (std::size_t i = 0; i < t_step.size(); ++i)
            t_step[i] = (box.hi[i] - box.lo[i]) / 16.0;

    for (int sweep = 0; sweep < config.hill_steps; ++sweep) {
        bool improved = false;
        if (!box.frozen) {
            for (std::size_t i = 0; i < cur.theta.size(); ++i) {
                if (t_step[i] <= 0.0) continue;
                for (double dir : {-1.0, 1.0}) {
                    std::vector<double> theta = cur.theta;
                    theta[i] = std::clamp(theta[i] + dir * t_step[i], box.lo[i], box.hi[i]);
                    if (theta[i] == cur.theta[i]) continue;
                    FamilyMember probe =
                        member_from_theta(*obj.family, obj.seed, cur.index, theta);
                    const double probe_mean = obj.mean_of(probe);
                    const double v = obj.violation_at(probe, probe_mean, cur.x);
                    if (v > cur.value) {
                        cur.theta = probe.theta;
                        cur.value = v;
                        member = std::move(probe);
                        mean = probe_mean;
                        improved = true;
                        break;
                    }
                }
            }
        }
        for (double dir : {-1.0, 1.0}) {
            const double x = std::clamp(cur.x + dir * x_step, adm.a, adm.b);
            if (x == cur.x) continue;
            const double v = obj.violation_at(member, mean, x);
            if (v > cur.value) {
                cur.x = x;
                cur.value = v;
                improved = true;
                break;
            }
        }
        if (!improved) {
            x_step *= 0.5;
            for (double& s : t_step) s *= 0.5;
            double widest = x_step;
            for (double s : t_step) widest = std::max(widest, s);
            if (widest < 1e-10) break;
        }
    }
    return cur;
}

struct Verified {
    Candidate candidate;
    BoundEvaluation evaluation;
    double violation_primary = 0.0;
    double violation_coarse = 0.0;
};

Verified reverify(const Candidate& c, InequalityCase tag, const FamilyConfig& family,
                  std::uint64_t seed, double tol) {
    const FamilyMember m = member_from_theta(family, seed, c.index, c.theta);
    const double mean =
        integrate(m.model.eval, m.model.domain, tol, m.kinks).value / m.model.domain.width();
    Verified v;
    v.candidate = c;
    v.evaluation = evaluate_claim(tag, m.model, m.model.domain, c.x, m.bounds, mean);
    v.violation_primary = -v.evaluation.slack_primary;
    v.violation_coarse = -v.evaluation.slack_coarse;
    return v;
}

std::vector<Candidate> top_candidates(std::vector<Candidate> all, int keep) {
    std::sort(all.begin(), all.end(), better);
    if (static_cast<int>(all.size()) > keep) all.resize(static_cast<std::size_t>(keep));
    return all;
}

}  // namespace

std::string_view verdict_name(AuditVerdict v) {
    switch (v) {
        case AuditVerdict::NoViolationFound: return "no-violation-found";
        case AuditVerdict::ViolatedPrimary: return "violated-primary";
        case AuditVerdict::ViolatedCoarse: return "violated-coarse";
        case AuditVerdict::ViolatedBoth: return "violated-both";
        case AuditVerdict::NegativeBoundObserved: return "negative-bound-observed";
    }
    return "?";
}

Violation violation(InequalityCase c, const FunctionModel& g, const Interval& iv, double x,
                    const DerivativeBounds& db, double tol, std::span<const double> kinks) {
    const double mean = integrate(g.eval, iv, tol, kinks).value / iv.width();
    Violation v;
    v.evaluation = evaluate_claim(c, g, iv, x, db, mean);
    v.primary = -v.evaluation.slack_primary;
    v.coarse = -v.evaluation.slack_coarse;
    return v;
}

AuditReport audit(InequalityCase c, FamilyTag family, const AuditConfig& config) {
    FamilyConfig fc;
    fc.tag = family;
    fc.normalized_derivative = normalized_hypothesis(c);
    return audit(c, fc, config);
}

AuditReport audit(InequalityCase c, const FamilyConfig& family, const AuditConfig& config) {
    if (config.samples < 1) throw Error("audit needs at least one sample");

    // Phase 1: grid scan, fanned out over workers, reduced in index order.
    std::vector<ScanResult> scans(static_cast<std::size_t>(config.samples));
    {
        const int workers = std::max(1, config.threads);
        std::atomic<int> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto run = [&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= config.samples) return;
                try {
                    scans[static_cast<std::size_t>(i)] =
                        scan_member(c, family, config.seed, i, config);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        if (workers == 1) {
            run();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(workers));
            for (int w = 0; w < workers; ++w) pool.emplace_back(run);
            for (auto& t : pool) t.join();
        }
        if (first_error) std::rethrow_exception(first_error);
    }

    std::vector<Candidate> primary_all, coarse_all;
    double min_width_primary = std::numeric_limits<double>::infinity();
    primary_all.reserve(scans.size());
    coarse_all.reserve(scans.size());
    for (const ScanResult& s : scans) {
        primary_all.push_back(s.primary);
        coarse_all.push_back(s.coarse);
        min_width_primary = std::min(min_width_primary, s.min_width_primary);
    }

    // Phase 2: hill climb the survivors, sequentially and in rank order.
    Objective obj_primary{c, &family, config.seed, config.oracle_tol, false};
    Objective obj_coarse{c, &family, config.seed, config.oracle_tol, true};
    std::vector<Candidate> primary_top =
        top_candidates(std::move(primary_all), config.top_candidates);
    std::vector<Candidate> coarse_top =
        top_candidates(std::move(coarse_all), config.top_candidates);
    for (Candidate& cand : primary_top) cand = climb(cand, obj_primary, config);
    for (Candidate& cand : coarse_top) cand = climb(cand, obj_coarse, config);

    // Phase 3: fresh oracle re-verification at tol/100 decides everything.
    const double reverify_tol = config.oracle_tol / 100.0;
    const double report_threshold = 10.0 * reverify_tol;

    AuditReport report;
    report.tag = c;
    report.status = case_status(c);
    report.family = family.tag;
    report.samples = config.samples;
    report.seed = config.seed;

    bool have_best = false;
    Verified best;  // witness: largest re-verified violation on either width
    double best_key = 0.0;
    report.worst_violation_primary = -std::numeric_limits<double>::infinity();
    report.worst_violation_coarse = -std::numeric_limits<double>::infinity();

    auto consider = [&](const Candidate& cand) {
        Verified v = reverify(cand, c, family, config.seed, reverify_tol);
        report.worst_violation_primary =
            std::max(report.worst_violation_primary, v.violation_primary);
        report.worst_violation_coarse =
            std::max(report.worst_violation_coarse, v.violation_coarse);
        const double key = std::max(v.violation_primary, v.violation_coarse);
        Candidate keyed = v.candidate;
        keyed.value = key;
        Candidate incumbent = best.candidate;
        incumbent.value = best_key;
        if (!have_best || better(keyed, incumbent)) {
            best = std::move(v);
            best_key = key;
            have_best = true;
        }
    };
    for (const Candidate& cand : primary_top) consider(cand);
    for (const Candidate& cand : coarse_top) consider(cand);

    if (have_best) {
        report.witness.index = best.candidate.index;
        report.witness.theta = best.candidate.theta;
        report.witness.x = best.candidate.x;
        report.witness.lhs = best.evaluation.lhs;
        report.witness.width_primary = best.evaluation.half_width_primary;
        report.witness.width_coarse = best.evaluation.half_width_coarse;
    }

    const bool violated_primary = report.worst_violation_primary > report_threshold;
    const bool violated_coarse = report.worst_violation_coarse > report_threshold;
    if (violated_primary && violated_coarse)
        report.verdict = AuditVerdict::ViolatedBoth;
    else if (violated_primary)
        report.verdict = AuditVerdict::ViolatedPrimary;
    else if (violated_coarse)
        report.verdict = AuditVerdict::ViolatedCoarse;
    else if (min_width_primary < -report_threshold)
        report.verdict = AuditVerdict::NegativeBoundObserved;
    else
        report.verdict = AuditVerdict::NoViolationFound;
    return report;
}

std::string report_to_json(const AuditReport& r) {
    std::string out;
    out += "{\"case\":\"" + std::string(case_name(r.tag)) + "\"";
    out += ",\"status\":\"" + std::string(status_name(r.status)) + "\"";
    out += ",\"family\":\"" + std::string(family_name(r.family)) + "\"";
    out += ",\"samples\":" + std::to_string(r.samples);
    out += ",\"seed\":" + std::to_string(r.seed);
    out += ",\"worst_violation_primary\":" + fmt17(r.worst_violation_primary);
    out += ",\"worst_violation_coarse\":" + fmt17(r.worst_violation_coarse);
    out += ",\"witness\":{\"index\":" + std::to_string(r.witness.index);
    out += ",\"theta\":[";
    for (std::size_t i = 0; i < r.witness.theta.size(); ++i) {
        if (i) out += ',';
        out += fmt17(r.witness.theta[i]);
    }
    out += "],\"x\":" + fmt17(r.witness.x);
    out += ",\"lhs\":" + fmt17(r.witness.lhs);
    out += ",\"width_primary\":" + fmt17(r.witness.width_primary);
    out += ",\"width_coarse\":" + fmt17(r.witness.width_coarse);
    out += "},\"verdict\":\"" + std::string(verdict_name(r.verdict)) + "\"}\n";
    return out;
}

std::string report_to_csv(const AuditReport& r) {
    std::string out =
        "case,status,family,samples,seed,worst_violation_primary,worst_violation_coarse,"
        "witness_index,witness_theta,witness_x,witness_lhs,witness_width_primary,"
        "witness_width_coarse,verdict\n";
    out += std::string(case_name(r.tag)) + ',' + std::string(status_name(r.status)) + ',' +
           std::string(family_name(r.family)) + ',' + std::to_string(r.samples) + ',' +
           std::to_string(r.seed) + ',' + fmt17(r.worst_violation_primary) + ',' +
           fmt17(r.worst_violation_coarse) + ',' + std::to_string(r.witness.index) + ',';
    for (std::size_t i = 0; i < r.witness.theta.size(); ++i) {
        if (i) out += ';';
        out += fmt17(r.witness.theta[i]);
    }
    out += ',' + fmt17(r.witness.x) + ',' + fmt17(r.witness.lhs) + ',' +
           fmt17(r.witness.width_primary) + ',' + fmt17(r.witness.width_coarse) + ',' +
           std::string(verdict_name(r.verdict)) + '\n';
    return out;
}

}  // namespace quadbound
