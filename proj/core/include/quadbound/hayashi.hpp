#pragma once

#include <span>

#include "quadbound/types.hpp"

namespace quadbound {

// The two-sided Steffensen/Hayashi bracket for a nonincreasing p and an
// integrable h with 0 <= h <= A on [a,b]:
//
//     A * int_{b-lambda}^{b} p  <=  int_a^b p*h  <=  A * int_a^{a+lambda} p,
//
// with window lambda = (1/A) * int_a^b h. A = 1 is Steffensen's inequality.
struct HayashiTriple {
    double lower = 0.0;
    double middle = 0.0;
    double upper = 0.0;
    double lambda = 0.0;

    double margin_lower() const { return middle - lower; }
    double margin_upper() const { return upper - middle; }
};

// Computes the three bracket members via the oracle at tolerance `tol`.
// Input checks are sampled at 1024 uniform points: p must be nonincreasing
// (slack 1e-9 scaled by its observed range) and h must stay in
// [-1e-9, A + 1e-9]. Throws NotNonincreasing / RangeViolation naming the
// witnessing sample point, or LambdaOutOfRange if the window escapes
// [0, b-a] beyond quadrature noise. Kinks of p or h may be passed as
// forced split points for the oracle.
HayashiTriple hayashi_margins(const FunctionModel& p, const FunctionModel& h, double A,
                              const Interval& iv, double tol,
                              std::span<const double> forced_splits = {});

struct HayashiCheck {
    HayashiTriple triple;
    bool pass = false;  // both margins >= -10*tol
};

HayashiCheck check_hayashi(const FunctionModel& p, const FunctionModel& h, double A,
                           const Interval& iv, double tol,
                           std::span<const double> forced_splits = {});

}  // namespace quadbound
