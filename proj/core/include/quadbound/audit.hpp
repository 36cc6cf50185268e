#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "quadbound/claims.hpp"
#include "quadbound/families.hpp"

namespace quadbound {

// lhs - half_width for both widths of one case instance; positive means
// the printed inequality fails there. mean integral comes from the oracle
// at `tol` with the member's kinks as forced splits.
struct Violation {
    double primary = 0.0;
    double coarse = 0.0;
    BoundEvaluation evaluation;
};

Violation violation(InequalityCase c, const FunctionModel& g, const Interval& iv, double x,
                    const DerivativeBounds& db, double tol = 1e-10,
                    std::span<const double> kinks = {});

struct AuditConfig {
    int samples = 100;
    std::uint64_t seed = 0;
    int x_grid = 65;          // scan points over the admissible set
    int hill_steps = 200;     // coordinate-descent sweeps per candidate
    int top_candidates = 5;   // scan survivors handed to the climber
    double oracle_tol = 1e-10;
    int threads = 1;
};

enum class AuditVerdict {
    NoViolationFound,
    ViolatedPrimary,
    ViolatedCoarse,
    ViolatedBoth,
    NegativeBoundObserved,
};

std::string_view verdict_name(AuditVerdict v);

struct AuditWitness {
    int index = -1;                // sample index the witness came from
    std::vector<double> theta;
    double x = 0.0;
    double lhs = 0.0;
    double width_primary = 0.0;
    double width_coarse = 0.0;
};

// Worst violation found for one claim over one family. Violations are
// only reported after a fresh oracle re-verification at oracle_tol/100
// with the member's kinks as forced splits; a reported violation exceeds
// ten times that re-verification tolerance. Byte-for-byte deterministic
// for fixed (case, family, config), regardless of thread count.
struct AuditReport {
    InequalityCase tag = InequalityCase::C1;
    CaseStatus status = CaseStatus::Verified;
    FamilyTag family = FamilyTag::DProfile;
    int samples = 0;
    std::uint64_t seed = 0;
    double worst_violation_primary = 0.0;
    double worst_violation_coarse = 0.0;
    AuditWitness witness;
    AuditVerdict verdict = AuditVerdict::NoViolationFound;
};

// Two-phase search: scan every sampled member over an x-grid of the
// admissible set, then coordinate-wise hill climbing on (theta, x) from
// the top candidates with halving steps (stop at 1e-10). Ties break
// toward smaller x, then lexicographically smaller theta, then smaller
// sample index. Sample scans may fan out to config.threads workers;
// results are reduced in index order.
AuditReport audit(InequalityCase c, FamilyTag family, const AuditConfig& config);
AuditReport audit(InequalityCase c, const FamilyConfig& family, const AuditConfig& config);

// Machine encodings (17 significant digits, LF line endings).
std::string report_to_json(const AuditReport& r);
std::string report_to_csv(const AuditReport& r);

}  // namespace quadbound
