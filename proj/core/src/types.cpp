#include "quadbound/types.hpp"

#include <algorithm>
#include <cmath>

namespace quadbound {

std::string_view provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Exact: return "exact";
        case Provenance::SampledInflated: return "sampled-inflated";
        case Provenance::Asserted: return "asserted";
    }
    return "?";
}

bool derivative_consistent(const FunctionModel& f, int probes, double rel_tol) {
    if (!f.eval || !f.deriv) return false;
    const double w = f.domain.width();
    const double h = 1e-6 * std::max(1.0, w);
    for (int i = 1; i <= probes; ++i) {
        const double t = f.domain.a + w * i / (probes + 1.0);
        if (t - h <= f.domain.a || t + h >= f.domain.b) continue;
        const double fd = (f.eval(t + h) - f.eval(t - h)) / (2.0 * h);
        const double d = f.deriv(t);
        const double scale = std::max({1.0, std::fabs(fd), std::fabs(d)});
        if (std::fabs(fd - d) > rel_tol * scale) return false;
    }
    return true;
}

}  // namespace quadbound
