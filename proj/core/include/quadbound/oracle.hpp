#pragma once

#include <functional>
#include <span>

#include "quadbound/types.hpp"

namespace quadbound {

struct OracleResult {
    double value = 0.0;
    double err_estimate = 0.0;  // sum of accepted panel estimates
    long evaluations = 0;
};

// Adaptive composite Simpson with Richardson acceptance: a panel is
// accepted when |S(left)+S(right) - S(whole)|/15 <= tol * width/(b-a),
// so err_estimate <= tol on success. `tol` is absolute over the whole
// interval. Recursion deeper than 60 levels throws NoConvergence (a jump
// discontinuity or singular integrand).
//
// `forced_splits` lists interior abscissae where panels must break; pass
// the kink locations of piecewise integrands to restore fast convergence
// (piecewise-cubic integrands then come out exact).
OracleResult integrate(const std::function<double(double)>& f, const Interval& iv, double tol,
                       std::span<const double> forced_splits = {});

// integrate applied to the pointwise product p*h.
OracleResult integrate_product(const std::function<double(double)>& p,
                               const std::function<double(double)>& h, const Interval& iv,
                               double tol, std::span<const double> forced_splits = {});

}  // namespace quadbound
