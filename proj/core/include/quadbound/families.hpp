#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadbound/types.hpp"

namespace quadbound {

// Parametrized test-function families the auditor draws from.
//
//   Canonical  three fixed members on [0,1] with lo=0, hi=1:
//                0: g(x) = x        (the trapezoid equality witness)
//                1: g(x) = x^2/2
//                2: g(x) = min(x, 1/2), kink at 1/2
//   Quadratic  g(x) = c0 + c1*x + c2*x^2 with coefficients drawn from a
//              box; derivative bounds are exact (g' is monotone).
//   DProfile   g' is piecewise linear through k node values clamped to
//              [lo, hi], g is its exact antiderivative, so the bounds are
//              exact by construction. The workhorse family.
//   All        canonical members first, then alternating quadratic and
//              dprofile draws.
enum class FamilyTag { Canonical, Quadratic, DProfile, All };

std::string_view family_name(FamilyTag t);
std::optional<FamilyTag> parse_family(std::string_view name);

struct FamilyConfig {
    FamilyTag tag = FamilyTag::DProfile;
    Interval domain{0.0, 1.0};
    int dprofile_nodes = 6;
    double coeff_lo = -1.0;
    double coeff_hi = 1.0;
    double clamp_lo = 0.0;  // dprofile derivative clamps
    double clamp_hi = 1.0;
    // Force g' into [0, b-a] (the hypothesis of the T-cases): dprofile
    // clamps become (0, b-a) and quadratic members are reparametrized as
    // g' running linearly between two values in [0, b-a].
    bool normalized_derivative = false;
};

struct FamilyMember {
    FunctionModel model;
    DerivativeBounds bounds;          // exact by construction
    std::vector<double> kinks;        // forced split points for the oracle
    std::vector<double> theta;        // the member's parameter vector
    int index = 0;                    // sample index it was drawn as
    std::string name;
};

// Per-coordinate parameter box for members drawn at `index` (the hill
// climber's projection set). Canonical members have a frozen parameter.
struct ThetaBox {
    std::vector<double> lo;
    std::vector<double> hi;
    bool frozen = false;
};
ThetaBox theta_box(const FamilyConfig& config, int index);

// Deterministic for (config, seed, index). Canonical ignores the seed and
// wraps the index mod 3; its theta is the single member id.
FamilyMember sample_family(const FamilyConfig& config, std::uint64_t seed, int index);

// Rebuild a member from an explicit parameter vector (the hill climber's
// entry point). Parameters are projected back into their boxes first.
FamilyMember member_from_theta(const FamilyConfig& config, std::uint64_t seed, int index,
                               std::vector<double> theta);

// A corpus entry carries everything needed to integrate and certify it:
// exact derivative bounds, oracle split points, and the abscissae where
// g' can attain extremes (so subinterval range sampling is exact).
struct CorpusEntry {
    FunctionModel model;
    DerivativeBounds bounds;
    std::vector<double> kinks;
    std::vector<double> deriv_extrema_hints;
    std::string name;
};

// 200 deterministic members with exact derivative bounds on varied
// intervals: the canonical three plus quadratics, cubics, and dprofiles.
std::vector<CorpusEntry> default_corpus();

// Smaller corpus on a caller-chosen interval with g' in [0, b-a]
// (normalized hypothesis), used by the sharpness table.
std::vector<CorpusEntry> normalized_corpus(const Interval& iv);

// g remapped to [0,1]: g~(s) = g(a + (b-a)s), bounds scaled by (b-a).
// Every weighted-endpoint BoundEvaluation is invariant under this map.
CorpusEntry remap_to_unit(const CorpusEntry& entry);

}  // namespace quadbound
