#pragma once

#include <vector>

#include "quadbound/types.hpp"

namespace quadbound {

struct CertifyConfig {
    int max_subintervals = 16384;
    int range_samples = 257;       // derivative sampling density per subinterval
    double range_inflation = 0.0;
    // Abscissae that must be included in derivative sampling whenever they
    // fall inside a subinterval (kinks / critical points of g'). With these
    // supplied, piecewise-linear and polynomial derivative ranges are exact.
    std::vector<double> derivative_sample_hints;
    // Oracle split points for the trapezoid data are not needed (only g's
    // endpoint values enter), but the label below records what the caller
    // knows about the bound quality.
    Provenance bound_provenance = Provenance::SampledInflated;
    double slope_slack = 1e-9;
};

// Integral estimate with a certified error radius. The radius is the sum
// of per-subinterval weighted-endpoint bounds in absolute form,
//     |int_s g - (w/2)(g(l)+g(r))| <= (hi_s-lo_s)/2 * lambda_s*(w-lambda_s),
// rigorous modulo the validity of the per-subinterval derivative bounds
// (recorded in bound_provenance).
struct CertifiedResult {
    double estimate = 0.0;
    double radius = 0.0;
    int subintervals = 0;
    long evaluations = 0;
    Provenance bound_provenance = Provenance::SampledInflated;
    bool within_tolerance = false;  // radius <= requested tol
};

// Splits the subinterval with the worst bound at its midpoint (ties to the
// leftmost) until the summed radius is <= tol or the budget is exhausted;
// in the latter case the best-so-far result is returned with
// within_tolerance = false. Per-subinterval derivative bounds are
// re-estimated on each child. Only the audited weighted-endpoint bound is
// used; the refuted point/symmetric claims never drive a certificate.
CertifiedResult certify(const FunctionModel& g, const Interval& iv, double tol,
                        const CertifyConfig& config = {});

}  // namespace quadbound
