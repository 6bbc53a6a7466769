#pragma once

#include <array>
#include <complex>
#include <utility>

#include "pdcsim/errors.hpp"

namespace pdcsim {

using cplx = std::complex<double>;

// Two-mode squeezer (parametric down-converter) parameters.
// Gain g is dimensionless; phi is the pump phase in radians, stored raw
// (not reduced) so sweeps never cross a branch cut.
struct SqueezerParams {
    double gain;
    double pump_phase;

    SqueezerParams(double g, double phi);
};

// Coherent stimulating amplitudes alpha (seeding the signal mode) and
// beta (seeding the idler mode), stored as modulus + phase.
struct StimulusParams {
    double alpha_modulus;
    double alpha_phase;
    double beta_modulus;
    double beta_phase;

    StimulusParams(double alpha_mod, double alpha_ph,
                   double beta_mod, double beta_ph);

    // Equal complex amplitudes in both modes.
    static StimulusParams symmetric(double modulus, double phase);
    static StimulusParams none() { return symmetric(0.0, 0.0); }

    cplx alpha() const;
    cplx beta() const;

    // alpha == beta as complex numbers. The closed forms require this.
    bool is_symmetric(double tol = 1e-12) const;
};

// Phase imprinted by the object / interferometer arm.
struct InterferometerPhase {
    double psi;
};

// mu = cosh(g), nu = e^{i phi} sinh(g); |mu|^2 - |nu|^2 = 1.
// Convention: mu is real nonnegative, all pump phase lives in nu.
struct BogoliubovPair {
    cplx mu;
    cplx nu;
};

BogoliubovPair bogoliubov(const SqueezerParams& p);

// An output-mode operator written over the two vacuum input modes:
//   constant + coeff_a * a0 + coeff_a_dag * a0^dag
//            + coeff_b * b0 + coeff_b_dag * b0^dag
struct AffineMode {
    cplx constant{};
    cplx coeff_a{};
    cplx coeff_a_dag{};
    cplx coeff_b{};
    cplx coeff_b_dag{};

    // Hermitian conjugate: conjugate everything, swap a <-> a^dag, b <-> b^dag.
    AffineMode dagger() const;
};

AffineMode operator*(const cplx& w, const AffineMode& m);
AffineMode operator+(const AffineMode& lhs, const AffineMode& rhs);

// Modes a1, b1 leaving the down-converter seeded by the coherent beams:
//   a1 = mu (a0 + alpha) + nu (b0^dag + beta^*)
//   b1 = mu (b0 + beta)  + nu (a0^dag + alpha^*)
std::pair<AffineMode, AffineMode> stimulated_modes(const SqueezerParams& p,
                                                   const StimulusParams& s);

// Composed 2x2 interferometer matrix B * diag(1, e^{i psi}) * B with the
// 50/50 splitter B = [[1, i], [i, 1]] / sqrt(2). Row-major.
std::array<cplx, 4> interferometer_matrix(double psi);

// Push (a1, b1) through splitter / phase / splitter, returning (a3, b3).
std::pair<AffineMode, AffineMode> propagate(
    const std::pair<AffineMode, AffineMode>& modes, InterferometerPhase psi);

}  // namespace pdcsim
