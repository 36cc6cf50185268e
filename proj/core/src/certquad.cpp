#include "quadbound/certquad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "quadbound/claims.hpp"
#include "quadbound/expr.hpp"

namespace quadbound {
namespace {

struct Node {
    double left = 0.0;
    double right = 0.0;
    double g_left = 0.0;
    double g_right = 0.0;
    double bound = 0.0;  // absolute weighted-endpoint bound on this piece
    DerivativeBounds db;

    double width() const { return right - left; }
    double trapezoid() const { return 0.5 * width() * (g_left + g_right); }
};

// Worst bound first; ties to the leftmost subinterval.
struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound < b.bound;
        return a.left > b.left;
    }
};

}  // namespace

CertifiedResult certify(const FunctionModel& g, const Interval& iv, double tol,
                        const CertifyConfig& config) {
    if (!(tol > 0.0)) throw Error("certify tolerance must be positive");
    if (!g.eval || !g.deriv) throw Error("certify needs g with an evaluable derivative");

    long evaluations = 0;
    auto deriv_counted = [&](double t) {
        ++evaluations;
        return g.deriv(t);
    };
    auto eval_counted = [&](double t) {
        ++evaluations;
        return g.eval(t);
    };

    auto subinterval_bounds = [&](const Interval& piece) -> DerivativeBounds {
        DerivativeBounds db = derivative_range(std::function<double(double)>(deriv_counted),
                                               piece, config.range_samples,
                                               config.range_inflation);
        for (double hint : config.derivative_sample_hints) {
            if (hint <= piece.a || hint >= piece.b) continue;
            const double v = deriv_counted(hint);
            db.lo = std::min(db.lo, v - 1e-12);
            db.hi = std::max(db.hi, v + 1e-12);
        }
        db.provenance = config.bound_provenance;
        return db;
    };

    auto make_node = [&](double left, double right, double gl, double gr) {
        Node n;
        n.left = left;
        n.right = right;
        n.g_left = gl;
        n.g_right = gr;
        const Interval piece{left, right};
        n.db = subinterval_bounds(piece);
        const double window = hayashi_window(gl, gr, piece, n.db, config.slope_slack);
        n.bound = 0.5 * n.db.oscillation() * window * (piece.width() - window);
        return n;
    };

    std::priority_queue<Node, std::vector<Node>, NodeOrder> queue;
    Node root = make_node(iv.a, iv.b, eval_counted(iv.a), eval_counted(iv.b));
    double radius = root.bound;
    queue.push(std::move(root));

    while (radius > tol && static_cast<int>(queue.size()) < config.max_subintervals) {
        Node worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.left + worst.right);
        if (!(worst.left < mid && mid < worst.right)) {  // width at rounding floor
            queue.push(std::move(worst));
            break;
        }
        const double g_mid = eval_counted(mid);
        Node l = make_node(worst.left, mid, worst.g_left, g_mid);
        Node r = make_node(mid, worst.right, g_mid, worst.g_right);
        radius += l.bound + r.bound - worst.bound;
        queue.push(std::move(l));
        queue.push(std::move(r));
    }

    // Deterministic left-to-right final sums.
    std::vector<Node> leaves;
    leaves.reserve(queue.size());
    while (!queue.empty()) {
        leaves.push_back(queue.top());
        queue.pop();
    }
    std::sort(leaves.begin(), leaves.end(),
              [](const Node& a, const Node& b) { return a.left < b.left; });

    CertifiedResult out;
    for (const Node& n : leaves) {
        out.estimate += n.trapezoid();
        out.radius += n.bound;
    }
    out.subintervals = static_cast<int>(leaves.size());
    out.evaluations = evaluations;
    out.bound_provenance = config.bound_provenance;
    out.within_tolerance = out.radius <= tol;
    return out;
}

}  // namespace quadbound
