#pragma once

#include <vector>

#include "pdcsim/core_model.hpp"

namespace pdcsim {

// Truncation controls for the Fock-space oracle.
struct OracleConfig {
    double tail_tolerance = 1e-10;
    // Extra levels kept per mode while exponentiating the squeezer, then
    // projected away. <= 0 means the default of cutoff / 4 (at least 2).
    int evolution_padding = 0;
};

// Truncated two-mode state vector, amplitudes indexed by (n_a, n_b) with
// 0 <= n < cutoff. tail_mass is the norm deficit from truncation.
struct FockState {
    std::vector<cplx> amplitudes;  // row-major, index n_a * cutoff + n_b
    int cutoff = 0;
    double tail_mass = 0.0;

    cplx& at(int n_a, int n_b) { return amplitudes[n_a * cutoff + n_b]; }
    const cplx& at(int n_a, int n_b) const {
        return amplitudes[n_a * cutoff + n_b];
    }
    double norm_squared() const;
};

struct DetectorCounts {
    double single_a;
    double single_b;
    double coincidence;  // <n_a n_b>, equal to <a^dag b^dag b a> here
};

// Oracle operating envelope; beyond this the cutoff grows past desk scale.
inline constexpr double kOracleMaxGain = 1.2;
inline constexpr double kOracleMaxStimulus = 2.0;

// Smallest per-mode cutoff whose estimated photon-number tail is below
// tail_tolerance, with a 10-sigma margin on the per-mode mean photon number
// under a thermal-plus-Poisson bound.
int choose_cutoff(const SqueezerParams& p, const StimulusParams& s,
                  const OracleConfig& cfg = {});

// S2(g, phi) D_a(alpha) D_b(beta) |0,0>: exact coherent amplitudes, then the
// squeezer as a matrix exponential on a padded basis, projected to cutoff.
FockState build_state(const SqueezerParams& p, const StimulusParams& s,
                      const OracleConfig& cfg = {});

// Push the state through splitter / phase / splitter and read out <n_a>,
// <n_b>, <n_a n_b>. The splitters act on a doubled grid so photon-number
// shells are never clipped.
DetectorCounts measure(const FockState& state, InterferometerPhase psi);

}  // namespace pdcsim
