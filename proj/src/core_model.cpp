#include "pdcsim/core_model.hpp"

#include <cmath>

namespace pdcsim {

namespace {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

}  // namespace

SqueezerParams::SqueezerParams(double g, double phi) : gain(g), pump_phase(phi) {
    require_finite(g, "gain");
    require_finite(phi, "pump_phase");
    if (g < 0.0) throw std::invalid_argument("gain must be nonnegative");
}

StimulusParams::StimulusParams(double alpha_mod, double alpha_ph,
                               double beta_mod, double beta_ph)
    : alpha_modulus(alpha_mod),
      alpha_phase(alpha_ph),
      beta_modulus(beta_mod),
      beta_phase(beta_ph) {
    require_finite(alpha_mod, "alpha_modulus");
    require_finite(alpha_ph, "alpha_phase");
    require_finite(beta_mod, "beta_modulus");
    require_finite(beta_ph, "beta_phase");
    if (alpha_mod < 0.0 || beta_mod < 0.0) {
        throw std::invalid_argument("stimulus moduli must be nonnegative");
    }
}

StimulusParams StimulusParams::symmetric(double modulus, double phase) {
    return StimulusParams(modulus, phase, modulus, phase);
}

cplx StimulusParams::alpha() const {
    return std::polar(alpha_modulus, alpha_phase);
}

cplx StimulusParams::beta() const {
    return std::polar(beta_modulus, beta_phase);
}

bool StimulusParams::is_symmetric(double tol) const {
    return std::abs(alpha() - beta()) <= tol;
}

BogoliubovPair bogoliubov(const SqueezerParams& p) {
    return {cplx(std::cosh(p.gain), 0.0),
            std::polar(std::sinh(p.gain), p.pump_phase)};
}

AffineMode AffineMode::dagger() const {
    AffineMode d;
    d.constant = std::conj(constant);
    d.coeff_a = std::conj(coeff_a_dag);
    d.coeff_a_dag = std::conj(coeff_a);
    d.coeff_b = std::conj(coeff_b_dag);
    d.coeff_b_dag = std::conj(coeff_b);
    return d;
}

AffineMode operator*(const cplx& w, const AffineMode& m) {
    return {w * m.constant, w * m.coeff_a, w * m.coeff_a_dag,
            w * m.coeff_b, w * m.coeff_b_dag};
}

AffineMode operator+(const AffineMode& lhs, const AffineMode& rhs) {
    return {lhs.constant + rhs.constant,
            lhs.coeff_a + rhs.coeff_a,
            lhs.coeff_a_dag + rhs.coeff_a_dag,
            lhs.coeff_b + rhs.coeff_b,
            lhs.coeff_b_dag + rhs.coeff_b_dag};
}

std::pair<AffineMode, AffineMode> stimulated_modes(const SqueezerParams& p,
                                                   const StimulusParams& s) {
    const auto [mu, nu] = bogoliubov(p);
    const cplx alpha = s.alpha();
    const cplx beta = s.beta();

    AffineMode a1;
    a1.constant = mu * alpha + nu * std::conj(beta);
    a1.coeff_a = mu;
    a1.coeff_b_dag = nu;

    AffineMode b1;
    b1.constant = mu * beta + nu * std::conj(alpha);
    b1.coeff_b = mu;
    b1.coeff_a_dag = nu;

    return {a1, b1};
}

std::array<cplx, 4> interferometer_matrix(double psi) {
    const cplx i(0.0, 1.0);
    const cplx e = std::polar(1.0, psi);
    // B * diag(1, e^{i psi}) * B, B = [[1, i], [i, 1]] / sqrt(2)
    return {0.5 * (1.0 - e), 0.5 * i * (1.0 + e),
            0.5 * i * (1.0 + e), 0.5 * (e - 1.0)};
}

std::pair<AffineMode, AffineMode> propagate(
    const std::pair<AffineMode, AffineMode>& modes, InterferometerPhase psi) {
    const auto m = interferometer_matrix(psi.psi);
    return {m[0] * modes.first + m[1] * modes.second,
            m[2] * modes.first + m[3] * modes.second};
}

}  // namespace pdcsim
