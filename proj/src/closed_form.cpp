#include "pdcsim/closed_form.hpp"

#include <cmath>

namespace pdcsim {

namespace {

void check_gain(const SqueezerParams& p) {
    if (p.gain > kMaxGain) {
        throw RangeExceeded("gain exceeds " + std::to_string(kMaxGain) +
                            "; exp(4g)-scale terms would overflow");
    }
}

void check_symmetric(const StimulusParams& s) {
    if (!s.is_symmetric()) {
        throw SymmetryRequired(
            "closed forms assume alpha == beta; use the moment engine for "
            "asymmetric stimulation");
    }
}

double delta_of(const SqueezerParams& p, const StimulusParams& s) {
    return p.pump_phase - 2.0 * s.alpha_phase;
}

// 1 + 2 sinh^2 g + sinh(2g) cos(delta); the square bracket common to the
// single-count and coincidence formulas. Equals cosh(2g) + sinh(2g) cos(delta),
// so it is always >= exp(-2g) > 0.
double bracket(double g, double delta) {
    return 1.0 + 2.0 * std::sinh(g) * std::sinh(g) +
           std::sinh(2.0 * g) * std::cos(delta);
}

}  // namespace

double single_counts(const SqueezerParams& p, const StimulusParams& s) {
    check_gain(p);
    check_symmetric(s);
    const double sh2 = std::sinh(p.gain) * std::sinh(p.gain);
    const double a2 = s.alpha_modulus * s.alpha_modulus;
    return sh2 + a2 * bracket(p.gain, delta_of(p, s));
}

std::pair<double, double> coefficients_ab(const SqueezerParams& p,
                                          const StimulusParams& s) {
    check_gain(p);
    check_symmetric(s);
    const double g = p.gain;
    const double delta = delta_of(p, s);
    const double sh2 = std::sinh(g) * std::sinh(g);
    const double s2g = std::sinh(2.0 * g);
    const double a2 = s.alpha_modulus * s.alpha_modulus;
    const double br = bracket(g, delta);

    const double A = sh2 * sh2 + 2.0 * a2 * sh2 * br;
    double B =
        0.5 * ((1.0 + sh2) * sh2 +
               a2 * s2g * (s2g + (1.0 + 2.0 * sh2) * std::cos(delta)) +
               a2 * a2 * br * br);
    // B is a perfect square at delta = pi; cancellation in the unfactored sum
    // can leave an epsilon-sized negative, which the fringe form must not see.
    const double scale = 0.5 * ((1.0 + sh2) * sh2 + a2 * s2g * (s2g + 1.0 + 2.0 * sh2) +
                                a2 * a2 * br * br);
    if (B < 0.0 && B >= -1e-12 * scale) B = 0.0;
    return {A, B};
}

double visibility(const SqueezerParams& p, const StimulusParams& s) {
    const auto [A, B] = coefficients_ab(p, s);
    if (A + B <= 0.0) {
        throw DegenerateStatistics(
            "no photons (g = 0 and alpha = 0): visibility undefined");
    }
    return B / (A + B);
}

double coincidence(const SqueezerParams& p, const StimulusParams& s,
                   InterferometerPhase psi) {
    const auto [A, B] = coefficients_ab(p, s);
    return A + B * (1.0 + std::cos(2.0 * psi.psi));
}

CountStats count_stats(const SqueezerParams& p, const StimulusParams& s,
                       InterferometerPhase psi) {
    const auto [A, B] = coefficients_ab(p, s);
    CountStats out;
    out.single_a = single_counts(p, s);
    out.coincidence = A + B * (1.0 + std::cos(2.0 * psi.psi));
    out.coeff_A = A;
    out.coeff_B = B;
    out.visibility = (A + B > 0.0) ? B / (A + B) : 0.0;
    out.delta = delta_of(p, s);
    return out;
}

double spontaneous_visibility_limit(const SqueezerParams& p) {
    check_gain(p);
    const double sh2 = std::sinh(p.gain) * std::sinh(p.gain);
    return (1.0 + sh2) / (1.0 + 3.0 * sh2);
}

double spontaneous_strength_limit(const SqueezerParams& p) {
    check_gain(p);
    const double sh2 = std::sinh(p.gain) * std::sinh(p.gain);
    return 2.0 * sh2 * sh2 + sh2;
}

double stimulated_visibility_asymptote(double alpha_sq, double delta) {
    const double x = alpha_sq * (1.0 + std::cos(delta));
    return (0.25 + x + x * x) / (0.75 + 3.0 * x + x * x);
}

double stimulated_strength_asymptote(const SqueezerParams& p, double alpha_sq,
                                     double delta) {
    check_gain(p);
    const double sh2 = std::sinh(p.gain) * std::sinh(p.gain);
    const double x = alpha_sq * (1.0 + std::cos(delta));
    return 2.0 * sh2 * sh2 * (1.0 + 4.0 * x + 2.0 * x * x);
}

double enhancement_ratio(const SqueezerParams& p, const StimulusParams& s) {
    check_symmetric(s);
    const double spontaneous = spontaneous_strength_limit(p);
    if (spontaneous <= 0.0) {
        throw DegenerateStatistics(
            "spontaneous coincidence vanishes at g = 0; ratio undefined");
    }
    return coincidence(p, s, InterferometerPhase{0.0}) / spontaneous;
}

}  // namespace pdcsim
