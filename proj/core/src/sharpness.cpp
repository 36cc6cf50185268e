#include "quadbound/sharpness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "quadbound/oracle.hpp"

namespace quadbound {
namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::vector<SharpnessRow> sharpness_table(const std::vector<InequalityCase>& cases,
                                          const std::vector<CorpusEntry>& corpus,
                                          const Interval& iv, int x_grid, double oracle_tol) {
    // One oracle integral per member, shared across cases and x.
    std::vector<double> means(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i)
        means[i] = integrate(corpus[i].model.eval, iv, oracle_tol, corpus[i].kinks).value /
                   iv.width();

    // One common bounds pair (0, b-a) for the whole normalized corpus, so
    // each case has a single scaled constant in its row.
    const DerivativeBounds common{0.0, iv.width(), Provenance::Exact};

    std::vector<SharpnessRow> rows;
    rows.reserve(cases.size());
    const int grid = std::max(2, x_grid);
    for (InequalityCase c : cases) {
        SharpnessRow row;
        row.tag = c;
        row.status = case_status(c);
        row.coarse_constant = half_widths(c, 0.0, iv, common).coarse;
        const Interval adm = admissible_x(c, iv);
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            const CorpusEntry& e = corpus[i];
            for (int k = 0; k < grid; ++k) {
                const double x = adm.a + (adm.b - adm.a) * k / (grid - 1.0);
                const BoundEvaluation ev = evaluate_claim(c, e.model, iv, x, common, means[i]);
                if (ev.lhs > row.observed_max_lhs) {
                    row.observed_max_lhs = ev.lhs;
                    row.witness_family = e.name;
                    row.witness_index = static_cast<int>(i);
                    row.witness_x = x;
                }
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string sharpness_to_csv(const std::vector<SharpnessRow>& rows) {
    std::string out =
        "case,status,coarse_constant,observed_max_lhs,witness_family,witness_index,witness_x\n";
    for (const SharpnessRow& r : rows) {
        out += std::string(case_name(r.tag)) + ',' + std::string(status_name(r.status)) + ',' +
               fmt17(r.coarse_constant) + ',' + fmt17(r.observed_max_lhs) + ',' +
               r.witness_family + ',' + std::to_string(r.witness_index) + ',' +
               fmt17(r.witness_x) + '\n';
    }
    return out;
}

}  // namespace quadbound
