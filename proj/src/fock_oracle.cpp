#include "pdcsim/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace pdcsim {

double FockState::norm_squared() const {
    double n = 0.0;
    for (const cplx& c : amplitudes) n += std::norm(c);
    return n;
}

namespace {

void check_envelope(const SqueezerParams& p, const StimulusParams& s) {
    if (p.gain > kOracleMaxGain || s.alpha_modulus > kOracleMaxStimulus ||
        s.beta_modulus > kOracleMaxStimulus) {
        throw EnvelopeExceeded(
            "fock oracle envelope is g <= 1.2, |alpha|, |beta| <= 2");
    }
}

void check_config(const OracleConfig& cfg) {
    if (!(cfg.tail_tolerance > 0.0 && cfg.tail_tolerance <= 1e-4)) {
        throw std::invalid_argument("tail_tolerance must be in (0, 1e-4]");
    }
}

// y <- exp(K) y for anti-Hermitian K given by its sparse action, via
// scaling and a Taylor series per substep. norm_bound is any upper bound
// on the operator norm of K.
void apply_exp(std::vector<cplx>& state,
               const std::function<void(const std::vector<cplx>&,
                                        std::vector<cplx>&)>& apply_k,
               double norm_bound) {
    const int steps = std::max(1, static_cast<int>(std::ceil(norm_bound)));
    const std::size_t dim = state.size();
    std::vector<cplx> term(dim), next(dim), acc(dim);

    for (int s = 0; s < steps; ++s) {
        term = state;
        acc = state;
        for (int k = 1; k <= 64; ++k) {
            apply_k(term, next);
            const double inv = 1.0 / (static_cast<double>(steps) * k);
            double term_norm = 0.0, acc_norm = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                term[i] = next[i] * inv;
                acc[i] += term[i];
                term_norm += std::norm(term[i]);
                acc_norm += std::norm(acc[i]);
            }
            if (term_norm <= 1e-32 * acc_norm) break;
        }
        state = acc;
    }
}

int padding_for(int cutoff, const OracleConfig& cfg) {
    if (cfg.evolution_padding > 0) return cfg.evolution_padding;
    return std::max(2, cutoff / 4);
}

}  // namespace

int choose_cutoff(const SqueezerParams& p, const StimulusParams& s,
                  const OracleConfig& cfg) {
    check_envelope(p, s);
    check_config(cfg);

    // Displacement shifts the mean but not the covariance, so each mode's
    // marginal is a displaced thermal state: thermal mean T = sinh^2 g and
    // coherent intensity P = |mu alpha + nu beta^*|^2 (amplified by the
    // squeezer).
    const auto [mu, nu] = bogoliubov(p);
    const double T = std::sinh(p.gain) * std::sinh(p.gain);
    const double P =
        std::max(std::norm(mu * s.alpha() + nu * std::conj(s.beta())),
                 std::norm(mu * s.beta() + nu * std::conj(s.alpha())));

    // Thermal-plus-Poisson moments of the displaced thermal number
    // distribution, with a 10-sigma margin.
    const double mean = T + P;
    if (mean == 0.0) return 2;  // exact vacuum
    const double var = T * (T + 1.0) + (2.0 * T + 1.0) * P;
    const int margin_cutoff =
        static_cast<int>(std::ceil(mean + 10.0 * std::sqrt(var)));

    // Chernoff bound from the generating function
    //   E[z^n] = exp(-P (1 - z) / (1 + T (1 - z))) / (1 + T (1 - z)),
    // minimized over z in (1, 1 + 1/T). Per-mode tails add, hence tol/2.
    auto tail_bound = [&](int n) {
        double best = 1.0;
        const double z_max = (T > 0.0) ? 1.0 + 1.0 / T : 16.0;
        for (int k = 1; k < 64; ++k) {
            const double z = 1.0 + (z_max - 1.0) * k / 64.0;
            const double denom = 1.0 + T * (1.0 - z);
            if (denom <= 0.0) break;
            const double log_bound =
                -P * (1.0 - z) / denom - std::log(denom) - n * std::log(z);
            best = std::min(best, std::exp(log_bound));
        }
        return best;
    };
    int tail_cutoff = 2;
    while (tail_cutoff <= 4096 &&
           tail_bound(tail_cutoff) >= 0.5 * cfg.tail_tolerance) {
        ++tail_cutoff;
    }

    return std::max({2, margin_cutoff, tail_cutoff});
}

FockState build_state(const SqueezerParams& p, const StimulusParams& s,
                      const OracleConfig& cfg) {
    const int cutoff = choose_cutoff(p, s, cfg);
    const int padded = cutoff + padding_for(cutoff, cfg);

    // Displaced vacuum |alpha>|beta> with exact coherent amplitudes.
    std::vector<cplx> amp(static_cast<std::size_t>(padded) * padded,
                          cplx(0.0, 0.0));
    const cplx alpha = s.alpha();
    const cplx beta = s.beta();
    std::vector<cplx> ca(padded), cb(padded);
    const double w = std::exp(-0.5 * (std::norm(alpha) + std::norm(beta)));
    ca[0] = w;
    cb[0] = 1.0;
    for (int n = 1; n < padded; ++n) {
        ca[n] = ca[n - 1] * alpha / std::sqrt(static_cast<double>(n));
        cb[n] = cb[n - 1] * beta / std::sqrt(static_cast<double>(n));
    }
    for (int na = 0; na < padded; ++na) {
        for (int nb = 0; nb < padded; ++nb) {
            amp[na * padded + nb] = ca[na] * cb[nb];
        }
    }

    // Squeezer generator g (e^{i phi} a^dag b^dag - e^{-i phi} a b).
    const cplx gp = std::polar(p.gain, p.pump_phase);
    const cplx gm = std::conj(gp);
    auto squeeze_k = [&](const std::vector<cplx>& in, std::vector<cplx>& out) {
        std::fill(out.begin(), out.end(), cplx(0.0, 0.0));
        for (int na = 0; na < padded; ++na) {
            for (int nb = 0; nb < padded; ++nb) {
                const cplx v = in[na * padded + nb];
                if (v == cplx(0.0, 0.0)) continue;
                if (na + 1 < padded && nb + 1 < padded) {
                    out[(na + 1) * padded + nb + 1] +=
                        gp * std::sqrt(double(na + 1) * (nb + 1)) * v;
                }
                if (na > 0 && nb > 0) {
                    out[(na - 1) * padded + nb - 1] -=
                        gm * std::sqrt(double(na) * nb) * v;
                }
            }
        }
    };
    apply_exp(amp, squeeze_k, 2.0 * p.gain * padded);

    // Project the padded state onto the cutoff grid.
    FockState state;
    state.cutoff = cutoff;
    state.amplitudes.assign(static_cast<std::size_t>(cutoff) * cutoff,
                            cplx(0.0, 0.0));
    for (int na = 0; na < cutoff; ++na) {
        for (int nb = 0; nb < cutoff; ++nb) {
            state.at(na, nb) = amp[na * padded + nb];
        }
    }
    double padded_norm = 0.0;
    for (const cplx& c : amp) padded_norm += std::norm(c);
    state.tail_mass = padded_norm - state.norm_squared();

    if (state.tail_mass > cfg.tail_tolerance) {
        throw TruncationFailure("truncated state lost more than tail_tolerance");
    }
    return state;
}

DetectorCounts measure(const FockState& state, InterferometerPhase psi) {
    // The splitters preserve n_a + n_b but redistribute it, so work on a grid
    // wide enough for the largest populated shell.
    const int n = 2 * state.cutoff - 1;
    std::vector<cplx> amp(static_cast<std::size_t>(n) * n, cplx(0.0, 0.0));
    for (int na = 0; na < state.cutoff; ++na) {
        for (int nb = 0; nb < state.cutoff; ++nb) {
            amp[na * n + nb] = state.at(na, nb);
        }
    }

    // 50/50 splitter: exp(i (pi/4)(a^dag b + a b^dag)), realizing the
    // Heisenberg map a -> (a + i b)/sqrt(2).
    const cplx ik(0.0, M_PI / 4.0);
    auto splitter_k = [&](const std::vector<cplx>& in, std::vector<cplx>& out) {
        std::fill(out.begin(), out.end(), cplx(0.0, 0.0));
        for (int na = 0; na < n; ++na) {
            for (int nb = 0; nb < n; ++nb) {
                const cplx v = in[na * n + nb];
                if (v == cplx(0.0, 0.0)) continue;
                if (na + 1 < n && nb > 0) {
                    out[(na + 1) * n + nb - 1] +=
                        ik * std::sqrt(double(na + 1) * nb) * v;
                }
                if (na > 0 && nb + 1 < n) {
                    out[(na - 1) * n + nb + 1] +=
                        ik * std::sqrt(double(na) * (nb + 1)) * v;
                }
            }
        }
    };
    // a^dag b + a b^dag restricted to a shell of total number N has norm <= N.
    const double bound = (M_PI / 4.0) * (n - 1);

    auto norm_sq = [&amp] {
        double v = 0.0;
        for (const cplx& c : amp) v += std::norm(c);
        return v;
    };

    const double norm_in = norm_sq();
    apply_exp(amp, splitter_k, bound);
    if (std::abs(norm_sq() - norm_in) > 1e-10) {
        throw NumericalInconsistency("splitter unitary drifted the state norm");
    }
    for (int na = 0; na < n; ++na) {
        for (int nb = 0; nb < n; ++nb) {
            amp[na * n + nb] *= std::polar(1.0, psi.psi * nb);
        }
    }
    apply_exp(amp, splitter_k, bound);
    if (std::abs(norm_sq() - norm_in) > 1e-10) {
        throw NumericalInconsistency("splitter unitary drifted the state norm");
    }

    DetectorCounts counts{0.0, 0.0, 0.0};
    for (int na = 0; na < n; ++na) {
        for (int nb = 0; nb < n; ++nb) {
            const double pr = std::norm(amp[na * n + nb]);
            counts.single_a += na * pr;
            counts.single_b += nb * pr;
            counts.coincidence += double(na) * nb * pr;
        }
    }
    return counts;
}

}  // namespace pdcsim
