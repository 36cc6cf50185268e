#pragma once

#include <cmath>
#include <functional>

#include "quadbound/types.hpp"

namespace quadbound::testing {

inline FunctionModel model(std::function<double(double)> f, std::function<double(double)> df,
                           Interval domain, std::string name = "") {
    FunctionModel m;
    m.eval = std::move(f);
    m.deriv = std::move(df);
    m.domain = domain;
    m.description = std::move(name);
    return m;
}

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// |a-b| <= tol * max(1, |a|, |b|)
inline bool close_rel(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

}  // namespace quadbound::testing
