#include "quadbound/claims.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace quadbound {

CaseStatus case_status(InequalityCase c) {
    switch (c) {
        case InequalityCase::T3:
        case InequalityCase::C1: return CaseStatus::Verified;
        case InequalityCase::T4:
        case InequalityCase::C2:
        case InequalityCase::T5:
        case InequalityCase::C3: return CaseStatus::Claimed;
        case InequalityCase::DW:
        case InequalityCase::GS: return CaseStatus::Reference;
    }
    return CaseStatus::Reference;
}

RuleKind case_rule(InequalityCase c) {
    switch (c) {
        case InequalityCase::T3:
        case InequalityCase::C1: return RuleKind::WeightedEndpoint;
        case InequalityCase::T4:
        case InequalityCase::C2:
        case InequalityCase::DW: return RuleKind::PointEvaluation;
        case InequalityCase::T5:
        case InequalityCase::C3:
        case InequalityCase::GS: return RuleKind::SymmetricPair;
    }
    return RuleKind::WeightedEndpoint;
}

bool normalized_hypothesis(InequalityCase c) {
    return c == InequalityCase::T3 || c == InequalityCase::T4 || c == InequalityCase::T5;
}

std::string_view case_name(InequalityCase c) {
    switch (c) {
        case InequalityCase::T3: return "T3";
        case InequalityCase::C1: return "C1";
        case InequalityCase::T4: return "T4";
        case InequalityCase::C2: return "C2";
        case InequalityCase::T5: return "T5";
        case InequalityCase::C3: return "C3";
        case InequalityCase::DW: return "DW";
        case InequalityCase::GS: return "GS";
    }
    return "?";
}

std::string_view status_name(CaseStatus s) {
    switch (s) {
        case CaseStatus::Verified: return "VERIFIED";
        case CaseStatus::Claimed: return "CLAIMED";
        case CaseStatus::Reference: return "REFERENCE";
    }
    return "?";
}

std::optional<InequalityCase> parse_case(std::string_view name) {
    for (InequalityCase c :
         {InequalityCase::T3, InequalityCase::C1, InequalityCase::T4, InequalityCase::C2,
          InequalityCase::T5, InequalityCase::C3, InequalityCase::DW, InequalityCase::GS}) {
        if (name == case_name(c)) return c;
    }
    return std::nullopt;
}

Interval admissible_x(InequalityCase c, const Interval& iv) {
    if (case_rule(c) == RuleKind::SymmetricPair) return Interval{iv.a, iv.midpoint()};
    return iv;
}

double hayashi_window(double g_left, double g_right, const Interval& iv,
                      const DerivativeBounds& db, double slack) {
    const double width = iv.width();
    const double slope = (g_right - g_left) / width;
    if (slope < db.lo - slack || slope > db.hi + slack)
        throw MeanSlopeOutOfRange("endpoint slope " + std::to_string(slope) +
                                  " outside derivative bounds [" + std::to_string(db.lo) +
                                  ", " + std::to_string(db.hi) + "]");
    const double osc = db.oscillation();
    if (osc == 0.0) return 0.0;  // affine g: every rule in scope is exact
    const double window = (g_right - g_left - db.lo * width) / osc;
    // Only the allowed slack can push the window outside [0, width].
    return std::clamp(window, 0.0, width);
}

double rule_value(InequalityCase c, const FunctionModel& g, const Interval& iv, double x) {
    const Interval adm = admissible_x(c, iv);
    const double x_slack = 1e-12 * iv.width();
    if (!adm.contains(x, x_slack))
        throw PointOutOfRange("x=" + std::to_string(x) + " outside admissible [" +
                              std::to_string(adm.a) + ", " + std::to_string(adm.b) + "] for case " +
                              std::string(case_name(c)));
    const double width = iv.width();
    const double ga = g(iv.a);
    const double gb = g(iv.b);
    const double slope = (gb - ga) / width;
    switch (case_rule(c)) {
        case RuleKind::WeightedEndpoint:
            return ((x - iv.a) * ga + (iv.b - x) * gb) / width + slope * (x - iv.midpoint());
        case RuleKind::PointEvaluation:
            return g(x) - slope * (x - iv.midpoint());
        case RuleKind::SymmetricPair:
            return 0.5 * (g(x) + g(iv.a + iv.b - x));
    }
    throw Error("unreachable");
}

HalfWidths half_widths(InequalityCase c, double window, const Interval& iv,
                       const DerivativeBounds& db) {
    const double d = iv.width();
    if (window < 0.0 || window > d)
        throw Error("window must lie in [0, b-a]");
    // The normalized T-cases fix the oscillation at the interval width.
    const double osc = normalized_hypothesis(c) ? d : db.oscillation();
    const double w = window;
    HalfWidths hw;
    switch (c) {
        case InequalityCase::T3:
        case InequalityCase::C1:
            hw.primary = 0.5 * osc * w * (d - w) / d;
            hw.coarse = osc * d / 8.0;
            break;
        case InequalityCase::T4:
        case InequalityCase::C2:
            hw.primary = (osc / d) * (w * d / 2.0 - w * w);
            hw.coarse = osc * d / 16.0;
            break;
        case InequalityCase::T5:
        case InequalityCase::C3:
            // Negative for w > d/3; reported as-is.
            hw.primary = 0.5 * w * (osc / d) * (d - 3.0 * w);
            hw.coarse = osc * d / 24.0;
            break;
        case InequalityCase::DW:
            hw.primary = hw.coarse = 0.25 * osc * d;
            break;
        case InequalityCase::GS:
            hw.primary = hw.coarse = osc * d / 8.0;
            break;
    }
    return hw;
}

BoundEvaluation evaluate_claim(InequalityCase c, const FunctionModel& g, const Interval& iv,
                               double x, const DerivativeBounds& db, double mean_integral,
                               double slope_slack) {
    // The T-cases carry their own hypothesis 0 <= g' <= b-a.
    DerivativeBounds eff = db;
    if (normalized_hypothesis(c)) eff = DerivativeBounds{0.0, iv.width(), Provenance::Asserted};

    const double d = iv.width();
    const double ga = g(iv.a);
    const double gb = g(iv.b);
    const double window = hayashi_window(ga, gb, iv, eff, slope_slack);
    const double osc = eff.oscillation();

    BoundEvaluation ev;
    ev.tag = c;
    ev.status = case_status(c);
    ev.x = x;
    ev.window = window;
    ev.bounds_used = eff;
    ev.rule_value = rule_value(c, g, iv, x);
    ev.lhs = std::fabs(mean_integral - ev.rule_value);

    const HalfWidths hw = half_widths(c, window, iv, eff);
    ev.half_width_primary = hw.primary;
    ev.half_width_coarse = hw.coarse;
    ev.slack_primary = hw.primary - ev.lhs;
    ev.slack_coarse = hw.coarse - ev.lhs;

    // Steffensen envelope l1 <= I <= l2 from the case's proof route; in
    // every case lhs == |I - (l1+l2)/2| and primary == (l2-l1)/2.
    const double mid_off = x - iv.midpoint();
    switch (c) {
        case InequalityCase::T3:
        case InequalityCase::C1: {
            const double trap = ((x - iv.a) * ga + (iv.b - x) * gb) / d;
            ev.signed_deviation = mean_integral - trap - eff.lo * mid_off;
            ev.bracket_low = osc * (window * (x - iv.b) + 0.5 * window * window) / d;
            ev.bracket_high = osc * (window * (x - iv.a) - 0.5 * window * window) / d;
            break;
        }
        case InequalityCase::T4:
        case InequalityCase::C2: {
            ev.signed_deviation = mean_integral - g(x) + eff.lo * mid_off;
            ev.bracket_low = osc * (-window * (x - iv.a) + window * window) / d;
            ev.bracket_high = osc * (window * (iv.b - x) - window * window) / d;
            break;
        }
        case InequalityCase::DW: {
            ev.signed_deviation = mean_integral - g(x) + eff.lo * mid_off;
            const double center = -osc * window * mid_off / d;
            ev.bracket_low = center - hw.coarse;
            ev.bracket_high = center + hw.coarse;
            break;
        }
        case InequalityCase::T5:
        case InequalityCase::C3:
        case InequalityCase::GS: {
            ev.signed_deviation = mean_integral - ev.rule_value;
            ev.bracket_low = -hw.primary;
            ev.bracket_high = hw.primary;
            break;
        }
    }
    return ev;
}

double bracket_deficit(const BoundEvaluation& ev) {
    const double below = ev.bracket_low - ev.signed_deviation;
    const double above = ev.signed_deviation - ev.bracket_high;
    return std::max({below, above, 0.0});
}

}  // namespace quadbound
