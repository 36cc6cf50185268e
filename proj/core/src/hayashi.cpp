#include "quadbound/hayashi.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "quadbound/errors.hpp"
#include "quadbound/oracle.hpp"

namespace quadbound {
namespace {

constexpr int kCheckSamples = 1024;

}  // namespace

HayashiTriple hayashi_margins(const FunctionModel& p, const FunctionModel& h, double A,
                              const Interval& iv, double tol,
                              std::span<const double> forced_splits) {
    if (!(A > 0.0)) throw Error("Hayashi bound parameter A must be positive");
    if (!p.eval || !h.eval) throw Error("hayashi_margins needs evaluable p and h");

    const double width = iv.width();

    // Sampled hypothesis checks: p nonincreasing, 0 <= h <= A.
    std::vector<double> pv(kCheckSamples);
    double p_min = 0.0, p_max = 0.0;
    for (int i = 0; i < kCheckSamples; ++i) {
        const double t = iv.a + width * i / (kCheckSamples - 1.0);
        pv[i] = p(t);
        p_min = (i == 0) ? pv[i] : std::min(p_min, pv[i]);
        p_max = (i == 0) ? pv[i] : std::max(p_max, pv[i]);
    }
    const double mono_slack = 1e-9 * std::max(1e-30, p_max - p_min);
    for (int i = 0; i + 1 < kCheckSamples; ++i) {
        if (pv[i + 1] > pv[i] + mono_slack) {
            const double t = iv.a + width * (i + 1) / (kCheckSamples - 1.0);
            throw NotNonincreasing("p increases near t=" + std::to_string(t));
        }
    }
    for (int i = 0; i < kCheckSamples; ++i) {
        const double t = iv.a + width * i / (kCheckSamples - 1.0);
        const double v = h(t);
        if (v < -1e-9 || v > A + 1e-9)
            throw RangeViolation("h(t)=" + std::to_string(v) + " outside [0, A] at t=" +
                                 std::to_string(t));
    }

    HayashiTriple triple;
    const OracleResult ih = integrate(h.eval, iv, tol, forced_splits);
    triple.lambda = ih.value / A;

    const double lam_slack = std::max(1e-8 * std::max(1.0, width), 10.0 * tol / A);
    if (triple.lambda < -lam_slack || triple.lambda > width + lam_slack)
        throw LambdaOutOfRange("window " + std::to_string(triple.lambda) + " outside [0, " +
                               std::to_string(width) + "]");
    const double lam = std::clamp(triple.lambda, 0.0, width);

    auto clipped = [&](const Interval& r) {
        // Degenerate windows integrate to zero.
        return r.b - r.a > 0.0 ? integrate(p.eval, r, tol, forced_splits).value : 0.0;
    };
    triple.lower = A * clipped(Interval{iv.b - lam, iv.b});
    triple.middle = integrate_product(p.eval, h.eval, iv, tol, forced_splits).value;
    triple.upper = A * clipped(Interval{iv.a, iv.a + lam});
    return triple;
}

HayashiCheck check_hayashi(const FunctionModel& p, const FunctionModel& h, double A,
                           const Interval& iv, double tol,
                           std::span<const double> forced_splits) {
    HayashiCheck out;
    out.triple = hayashi_margins(p, h, A, iv, tol, forced_splits);
    const double threshold = -10.0 * tol;
    out.pass = out.triple.margin_lower() >= threshold && out.triple.margin_upper() >= threshold;
    return out;
}

}  // namespace quadbound
