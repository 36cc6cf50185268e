#pragma once

#include <string>
#include <vector>

#include "quadbound/claims.hpp"
#include "quadbound/families.hpp"

namespace quadbound {

// One row of the sharpness table: the case's coarse constant scaled by
// (hi-lo)(b-a) next to the largest deviation actually observed over the
// corpus. For VERIFIED and REFERENCE cases observed <= constant; for the
// refuted claims the observed value overshoots the printed constant.
struct SharpnessRow {
    InequalityCase tag = InequalityCase::C1;
    CaseStatus status = CaseStatus::Verified;
    double coarse_constant = 0.0;
    double observed_max_lhs = 0.0;
    std::string witness_family;
    int witness_index = -1;
    double witness_x = 0.0;
};

// Scans every corpus member over an x-grid per case. The corpus must carry
// exact bounds and kinks (default: normalized_corpus(iv)).
std::vector<SharpnessRow> sharpness_table(const std::vector<InequalityCase>& cases,
                                          const std::vector<CorpusEntry>& corpus,
                                          const Interval& iv, int x_grid = 65,
                                          double oracle_tol = 1e-10);

// CSV with a header row, comma separator, '.' decimal point, LF endings.
std::string sharpness_to_csv(const std::vector<SharpnessRow>& rows);

}  // namespace quadbound
