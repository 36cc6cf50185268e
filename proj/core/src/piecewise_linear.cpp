#include "quadbound/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>

#include "quadbound/errors.hpp"

namespace quadbound {

PiecewiseLinear::PiecewiseLinear(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    if (xs_.size() < 2 || xs_.size() != ys_.size())
        throw Error("piecewise-linear profile needs matching node/value lists of size >= 2");
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i)
        if (!(xs_[i] < xs_[i + 1]))
            throw Error("piecewise-linear nodes must be strictly ascending");

    cum_.assign(xs_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i)
        cum_[i + 1] = cum_[i] + 0.5 * (ys_[i] + ys_[i + 1]) * (xs_[i + 1] - xs_[i]);

    auto [lo, hi] = std::minmax_element(ys_.begin(), ys_.end());
    min_y_ = *lo;
    max_y_ = *hi;
}

std::size_t PiecewiseLinear::segment_of(double t) const {
    // Rightmost segment whose left node is <= t; clamps outside the range.
    auto it = std::upper_bound(xs_.begin(), xs_.end(), t);
    if (it == xs_.begin()) return 0;
    std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
    return std::min(i, xs_.size() - 2);
}

double PiecewiseLinear::operator()(double t) const {
    const std::size_t i = segment_of(t);
    const double u = (t - xs_[i]) / (xs_[i + 1] - xs_[i]);
    const double uc = std::clamp(u, 0.0, 1.0);
    return ys_[i] + uc * (ys_[i + 1] - ys_[i]);
}

double PiecewiseLinear::integral_from_start(double t) const {
    const std::size_t i = segment_of(t);
    const double h = xs_[i + 1] - xs_[i];
    const double dt = std::clamp(t, xs_.front(), xs_.back()) - xs_[i];
    const double slope = (ys_[i + 1] - ys_[i]) / h;
    return cum_[i] + ys_[i] * dt + 0.5 * slope * dt * dt;
}

std::vector<double> PiecewiseLinear::interior_nodes() const {
    if (xs_.size() <= 2) return {};
    return std::vector<double>(xs_.begin() + 1, xs_.end() - 1);
}

}  // namespace quadbound
