#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <string_view>

#include "quadbound/errors.hpp"

namespace quadbound {

// Closed segment [a, b] with a < b, both finite.
struct Interval {
    double a = 0.0;
    double b = 1.0;

    double width() const { return b - a; }
    double midpoint() const { return 0.5 * (a + b); }
    bool contains(double x, double slack = 0.0) const { return x >= a - slack && x <= b + slack; }
};

inline Interval make_interval(double a, double b) {
    if (!(std::isfinite(a) && std::isfinite(b)))
        throw Error("interval endpoints must be finite");
    if (!(a < b))
        throw Error("interval requires a < b");
    return Interval{a, b};
}

// How a pair of derivative bounds was obtained. `Exact` means the bounds
// hold by construction (piecewise profiles, polynomial extrema);
// `SampledInflated` means dense sampling widened by an inflation factor;
// `Asserted` means the caller claims them and we take their word.
enum class Provenance { Exact, SampledInflated, Asserted };

std::string_view provenance_name(Provenance p);

// Two-sided bound lo <= g'(t) <= hi on an interval.
struct DerivativeBounds {
    double lo = 0.0;
    double hi = 0.0;
    Provenance provenance = Provenance::Asserted;

    double oscillation() const { return hi - lo; }
};

inline DerivativeBounds make_bounds(double lo, double hi, Provenance p) {
    if (!(std::isfinite(lo) && std::isfinite(hi)))
        throw Error("derivative bounds must be finite");
    if (lo > hi)
        throw Error("derivative bounds require lo <= hi");
    return DerivativeBounds{lo, hi, p};
}

// An evaluable real function g on an interval together with an evaluable
// first derivative. `deriv` may be empty for uses that never touch it
// (Steffensen/Hayashi checking only needs values).
struct FunctionModel {
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
    Interval domain;
    std::string description;

    double operator()(double x) const { return eval(x); }
};

// Central finite-difference consistency check between eval and deriv at
// `probes` interior points. Intended for smooth models; a kink inside the
// domain will (correctly) fail it.
bool derivative_consistent(const FunctionModel& f, int probes = 64, double rel_tol = 1e-5);

}  // namespace quadbound
