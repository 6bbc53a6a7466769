#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pdcsim/core_model.hpp"

namespace pdcsim {

enum class Quantity { kFringe, kVisibilityVsGain, kEnhancementVsGain, kSingles };
enum class Engine { kClosed, kMoment, kFock };

struct GridAxis {
    double start = 0.0;
    double stop = 0.0;
    int steps = 2;  // number of samples, >= 2 for a swept axis

    double at(int i) const;
};

// Either an explicit |alpha| or the equal-contribution rule, which picks
// |alpha| so the coherent-only and spontaneous-only coincidences match.
struct StimulusMode {
    bool equal_contribution = true;
    double alpha_modulus = 0.0;  // used when equal_contribution is false
};

struct SweepSpec {
    Quantity quantity = Quantity::kFringe;
    GridAxis gain_range{0.5, 0.5, 2};
    GridAxis psi_range{0.0, 2.0 * 3.14159265358979323846, 721};
    double gain = 0.5;                      // fringe/singles use a single gain
    std::vector<double> thetas{0.0};
    StimulusMode stimulus;
    double pump_phase = 3.14159265358979323846;
    std::vector<Engine> engines{Engine::kClosed};
    bool normalize = true;  // fringe only: divide by spontaneous psi=0 value
};

// Column-oriented result table; comments become #-prefixed CSV header lines.
struct SweepTable {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// |alpha| with |alpha|^4 = 2 sinh^4 g + sinh^2 g: coherent-fields-only
// coincidence at psi = 0 equals the spontaneous-only one.
double equal_contribution_alpha(const SqueezerParams& p);

// Resolve the stimulus for one gain value.
StimulusParams resolve_stimulus(const StimulusMode& mode,
                                const SqueezerParams& p, double theta);

SweepTable run_fringe(const SweepSpec& spec);
SweepTable run_visibility(const SweepSpec& spec);
SweepTable run_enhancement(const SweepSpec& spec);
SweepTable run_singles(const SweepSpec& spec);

// Cross-engine certification.
struct VerifySpec {
    std::vector<double> gains{0.0, 0.2, 0.5, 0.8};
    std::vector<double> alpha_moduli{0.0, 0.5, 1.0};
    std::vector<double> deltas{0.0, 1.5707963267948966, 3.14159265358979323846};
    std::vector<double> psis{0.0, 0.3, 1.5707963267948966, 2.1};
    double pump_phase = 3.14159265358979323846;
    int random_points = 1000;
    unsigned seed = 20250826;
    double tol_closed_moment = 1e-10;   // relative
    double tol_fock = 1e-6;             // relative, 1e-9 absolute below 1e-3
    bool with_fock = true;
};

struct VerifyReport {
    bool pass = false;
    double max_dev_closed_moment = 0.0;
    double max_dev_fock = 0.0;
    std::vector<std::string> lines;  // human-readable per-section summary
};

VerifyReport verify(const VerifySpec& spec);

// CSV emission: #-comments, header row, then rows at 17 significant digits.
void write_csv(const SweepTable& table, std::ostream& out);

// Plain `key = value` config file; '#' starts a comment. Unknown keys are
// the caller's problem (the CLI rejects them).
std::vector<std::pair<std::string, std::string>> parse_config(
    std::istream& in);

}  // namespace pdcsim
