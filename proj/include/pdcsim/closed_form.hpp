#pragma once

#include <utility>

#include "pdcsim/core_model.hpp"

namespace pdcsim {

// Gains above this make exp(4g)-scale quantities numerically unsafe.
inline constexpr double kMaxGain = 12.0;

// All count statistics at one parameter point. The coincidence fringe is
// coincidence = A + B (1 + cos 2 psi), with visibility V = B / (A + B).
struct CountStats {
    double single_a;     // mean count at detector a, psi = 0
    double coincidence;  // two-photon coincidence at the given psi
    double coeff_A;
    double coeff_B;
    double visibility;
    double delta;        // pump phase minus twice the stimulus phase
};

// Mean count at detector a in the absence of the object (psi = 0):
//   sinh^2 g + |alpha|^2 [1 + 2 sinh^2 g + sinh(2g) cos(delta)]
// Requires symmetric stimulation; asymmetric inputs go to the moment engine.
double single_counts(const SqueezerParams& p, const StimulusParams& s);

// Fringe coefficients (A, B); both nonnegative for all parameters.
std::pair<double, double> coefficients_ab(const SqueezerParams& p,
                                          const StimulusParams& s);

// V = B / (A + B). Throws DegenerateStatistics when no photons at all.
double visibility(const SqueezerParams& p, const StimulusParams& s);

// Two-photon coincidence count A + B (1 + cos 2 psi). This form is used
// unconditionally; the equivalent A {1 + [V/(1-V)](1 + cos 2 psi)} has a
// removable singularity at V = 1.
double coincidence(const SqueezerParams& p, const StimulusParams& s,
                   InterferometerPhase psi);

CountStats count_stats(const SqueezerParams& p, const StimulusParams& s,
                       InterferometerPhase psi);

// Spontaneous (alpha = 0) limits: visibility (1+sinh^2 g)/(1+3 sinh^2 g)
// and coincidence strength 2 sinh^4 g + sinh^2 g at psi = 0.
double spontaneous_visibility_limit(const SqueezerParams& p);
double spontaneous_strength_limit(const SqueezerParams& p);

// Large-gain visibility; g has dropped out, only |alpha|^2 and delta remain.
// With x = alpha_sq (1 + cos delta): (1/4 + x + x^2) / (3/4 + 3x + x^2).
double stimulated_visibility_asymptote(double alpha_sq, double delta);

// Large-gain coincidence strength at psi = 0:
//   2 sinh^4 g {1 + 4 x + 2 x^2}, x as above.
double stimulated_strength_asymptote(const SqueezerParams& p, double alpha_sq,
                                     double delta);

// Stimulated over spontaneous coincidence at psi = 0. Throws
// DegenerateStatistics at g = 0 (spontaneous coincidence vanishes).
double enhancement_ratio(const SqueezerParams& p, const StimulusParams& s);

}  // namespace pdcsim
