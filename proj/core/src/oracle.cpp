#include "quadbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "quadbound/errors.hpp"

namespace quadbound {
namespace {

constexpr int kMaxDepth = 60;

struct Workspace {
    const std::function<double(double)>* f = nullptr;
    double tol = 0.0;
    double total_width = 0.0;
    long evaluations = 0;

    double eval(double t) {
        ++evaluations;
        const double y = (*f)(t);
        if (std::isnan(y))
            throw DomainError("integrand returned NaN at t=" + std::to_string(t));
        return y;
    }
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

// Returns the Richardson-corrected panel integral, accumulating the
// accepted error estimates.
double refine(Workspace& ws, double a, double b, double fa, double fm, double fb, double whole,
              int depth, double& err_acc) {
    const double m = 0.5 * (a + b);
    if (!(a < m && m < b))  // panel no longer representable; a jump or singularity
        throw NoConvergence("panel below floating-point resolution near t=" + std::to_string(a));
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = ws.eval(lm);
    const double frm = ws.eval(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    const double panel_budget = ws.tol * (b - a) / ws.total_width;
    if (std::fabs(delta) / 15.0 <= panel_budget) {
        err_acc += std::fabs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    if (depth >= kMaxDepth)
        throw NoConvergence("adaptive Simpson depth exhausted near [" + std::to_string(a) +
                            ", " + std::to_string(b) + "]");
    double acc = refine(ws, a, m, fa, flm, fm, left, depth + 1, err_acc);
    acc += refine(ws, m, b, fm, frm, fb, right, depth + 1, err_acc);
    return acc;
}

}  // namespace

OracleResult integrate(const std::function<double(double)>& f, const Interval& iv, double tol,
                       std::span<const double> forced_splits) {
    if (!(tol > 0.0)) throw Error("oracle tolerance must be positive");
    if (!f) throw Error("oracle needs an evaluable integrand");

    std::vector<double> cuts;
    cuts.push_back(iv.a);
    for (double s : forced_splits)
        if (s > iv.a && s < iv.b) cuts.push_back(s);
    cuts.push_back(iv.b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    Workspace ws;
    ws.f = &f;
    ws.tol = tol;
    ws.total_width = iv.width();

    OracleResult out;
    double fa = ws.eval(cuts.front());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i];
        const double b = cuts[i + 1];
        const double fm = ws.eval(0.5 * (a + b));
        const double fb = ws.eval(b);
        const double whole = simpson(a, b, fa, fm, fb);
        out.value += refine(ws, a, b, fa, fm, fb, whole, 0, out.err_estimate);
        fa = fb;
    }
    out.evaluations = ws.evaluations;
    return out;
}

OracleResult integrate_product(const std::function<double(double)>& p,
                               const std::function<double(double)>& h, const Interval& iv,
                               double tol, std::span<const double> forced_splits) {
    auto product = [&p, &h](double t) { return p(t) * h(t); };
    return integrate(product, iv, tol, forced_splits);
}

}  // namespace quadbound
