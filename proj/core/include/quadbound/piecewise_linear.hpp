#pragma once

#include <vector>

#include "quadbound/types.hpp"

namespace quadbound {

// Continuous piecewise-linear profile through (xs[i], ys[i]) with xs
// strictly ascending. Values between nodes interpolate linearly, so the
// profile stays inside [min ys, max ys]; the exact antiderivative is
// piecewise quadratic and is evaluated in closed form.
class PiecewiseLinear {
  public:
    PiecewiseLinear() = default;
    PiecewiseLinear(std::vector<double> xs, std::vector<double> ys);

    double operator()(double t) const;

    // Exact integral from xs.front() to t.
    double integral_from_start(double t) const;

    double min_value() const { return min_y_; }
    double max_value() const { return max_y_; }
    const std::vector<double>& nodes() const { return xs_; }
    const std::vector<double>& values() const { return ys_; }

    // Interior node abscissae: the kinks of the profile and of its
    // antiderivative's second derivative.
    std::vector<double> interior_nodes() const;

  private:
    std::vector<double> xs_;
    std::vector<double> ys_;
    std::vector<double> cum_;  // cum_[i] = integral from xs_[0] to xs_[i]
    double min_y_ = 0.0;
    double max_y_ = 0.0;

    std::size_t segment_of(double t) const;
};

}  // namespace quadbound
