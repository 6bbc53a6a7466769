#pragma once

#include <vector>

#include "pdcsim/core_model.hpp"

namespace pdcsim {

// One factor of an operator product: an affine mode, optionally daggered.
struct MomentFactor {
    AffineMode mode;
    bool dagger = false;
};

// Operator product, leftmost factor first. Length <= 4.
struct MomentRequest {
    std::vector<MomentFactor> modes;
};

// Vacuum expectation of the product: expand the affine forms into monomials
// of input operators and apply Wick pairing on the two-mode vacuum
// (<a0 a0^dag> = <b0 b0^dag> = 1, every other contraction zero).
cplx vacuum_expectation(const MomentRequest& req);

// <a3^dag a3> at arbitrary psi and arbitrary (possibly asymmetric) stimulus.
double single_counts_general(const SqueezerParams& p, const StimulusParams& s,
                             InterferometerPhase psi);
// Same for detector b.
double single_counts_general_b(const SqueezerParams& p, const StimulusParams& s,
                               InterferometerPhase psi);

// <a3^dag b3^dag b3 a3>, the two-photon coincidence, arbitrary parameters.
double coincidence_general(const SqueezerParams& p, const StimulusParams& s,
                           InterferometerPhase psi);

}  // namespace pdcsim
