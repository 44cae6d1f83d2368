#pragma once

#include <vector>

#include "sepcert/criteria.hpp"

namespace sepcert {

struct SearchConfig {
    int grid_points_per_angle = 8;
    int refinement_iterations = 200;
    double refinement_tolerance = 1e-9;
    double violation_threshold = 1e-7;
    bool seed_frames_from_correlation = true;

    void validate() const;
};

/// Outcome of the frame search. The verdict is the search's own; the exact
/// partial-transpose result is always attached, with `agreement` exposing any
/// discrepancy. An entangled verdict is independently checkable: re-evaluating
/// hefei_margins at witness_frame reproduces min_m_plus.
struct CriterionReport {
    Verdict verdict;
    double min_m_plus;
    LocalFrame witness_frame;
    double min_m_minus_observed;
    PptResult ppt;
    bool agreement;
    bool converged;
};

/// Heuristic starting frames: the identity plus sign variants of the frame
/// that diagonalizes the correlation matrix (SU(2) lifts of its singular
/// vectors). At most 9 frames.
std::vector<LocalFrame> seed_frames(const DensityMatrix& rho);

/// Frame aligned with the most negative eigenvector of the partially
/// time-reversed state: when that eigenvalue is negative this frame is a
/// guaranteed witness, which makes the search exact in practice.
LocalFrame negativity_frame(const DensityMatrix& rho);

/// Searches the six-angle frame space for a violation of the second chiral
/// inequality: seed frames, a full grid, then simplex refinement of the best
/// candidates. Deterministic for fixed inputs.
CriterionReport certify(const DensityMatrix& rho, const SearchConfig& cfg = SearchConfig{});

}  // namespace sepcert
