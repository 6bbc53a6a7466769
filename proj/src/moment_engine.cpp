#include "pdcsim/moment_engine.hpp"

#include <array>
#include <cmath>
#include <cstddef>

namespace pdcsim {

namespace {

enum class Sym { kA, kADag, kB, kBDag };

// Vacuum contraction <X Y> for X preceding Y in the product.
double contraction(Sym x, Sym y) {
    if (x == Sym::kA && y == Sym::kADag) return 1.0;
    if (x == Sym::kB && y == Sym::kBDag) return 1.0;
    return 0.0;
}

// Sum over complete pairings of the word, each pairing contributing the
// product of its contractions. Zero-mean Gaussian state, so this is exact.
double wick(const std::vector<Sym>& word) {
    if (word.empty()) return 1.0;
    if (word.size() % 2 != 0) return 0.0;

    double total = 0.0;
    // Pair word[0] with each later position, recurse on the rest.
    for (std::size_t j = 1; j < word.size(); ++j) {
        const double c = contraction(word[0], word[j]);
        if (c == 0.0) continue;
        std::vector<Sym> rest;
        rest.reserve(word.size() - 2);
        for (std::size_t k = 1; k < word.size(); ++k) {
            if (k != j) rest.push_back(word[k]);
        }
        total += c * wick(rest);
    }
    return total;
}

struct Term {
    cplx coeff;
    std::vector<Sym> word;
};

// Five (coefficient, symbol) pieces of one affine factor: the c-number part
// and the four operator weights.
std::array<std::pair<cplx, int>, 5> pieces(const AffineMode& m) {
    return {{{m.constant, -1},
             {m.coeff_a, 0},
             {m.coeff_a_dag, 1},
             {m.coeff_b, 2},
             {m.coeff_b_dag, 3}}};
}

}  // namespace

cplx vacuum_expectation(const MomentRequest& req) {
    if (req.modes.size() > 4) {
        throw UnsupportedOrder("operator products longer than 4 unsupported");
    }

    std::vector<Term> terms{{cplx(1.0, 0.0), {}}};
    for (const auto& factor : req.modes) {
        const AffineMode m =
            factor.dagger ? factor.mode.dagger() : factor.mode;
        std::vector<Term> next;
        next.reserve(terms.size() * 5);
        for (const auto& t : terms) {
            for (const auto& [w, sym] : pieces(m)) {
                if (w == cplx(0.0, 0.0)) continue;
                Term nt{t.coeff * w, t.word};
                if (sym >= 0) nt.word.push_back(static_cast<Sym>(sym));
                next.push_back(std::move(nt));
            }
        }
        terms = std::move(next);
    }

    cplx total(0.0, 0.0);
    for (const auto& t : terms) {
        total += t.coeff * wick(t.word);
    }
    return total;
}

namespace {

// Extracts the real part, refusing to discard a non-negligible imaginary
// residue.
double real_checked(cplx value, const char* what) {
    const double scale = std::max(1.0, std::abs(value));
    if (std::abs(value.imag()) > 1e-12 * scale) {
        throw NumericalInconsistency(std::string(what) +
                                     ": imaginary residue above tolerance");
    }
    return value.real();
}

}  // namespace

double single_counts_general(const SqueezerParams& p, const StimulusParams& s,
                             InterferometerPhase psi) {
    const auto [a3, b3] = propagate(stimulated_modes(p, s), psi);
    (void)b3;
    MomentRequest req{{{a3, true}, {a3, false}}};
    return real_checked(vacuum_expectation(req), "<a3^dag a3>");
}

double single_counts_general_b(const SqueezerParams& p, const StimulusParams& s,
                               InterferometerPhase psi) {
    const auto [a3, b3] = propagate(stimulated_modes(p, s), psi);
    (void)a3;
    MomentRequest req{{{b3, true}, {b3, false}}};
    return real_checked(vacuum_expectation(req), "<b3^dag b3>");
}

double coincidence_general(const SqueezerParams& p, const StimulusParams& s,
                           InterferometerPhase psi) {
    const auto [a3, b3] = propagate(stimulated_modes(p, s), psi);
    MomentRequest req{{{a3, true}, {b3, true}, {b3, false}, {a3, false}}};
    return real_checked(vacuum_expectation(req), "<a3^dag b3^dag b3 a3>");
}

}  // namespace pdcsim
