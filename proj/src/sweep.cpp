#include "pdcsim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "pdcsim/closed_form.hpp"
#include "pdcsim/fock_oracle.hpp"
#include "pdcsim/moment_engine.hpp"

namespace pdcsim {

namespace {

constexpr char kEngineVersion[] = "pdcsim 1.0.0";
constexpr double kPi = 3.14159265358979323846;

const char* engine_name(Engine e) {
    switch (e) {
        case Engine::kClosed: return "closed";
        case Engine::kMoment: return "moment";
        case Engine::kFock: return "fock";
    }
    return "?";
}

bool has_engine(const SweepSpec& spec, Engine e) {
    return std::find(spec.engines.begin(), spec.engines.end(), e) !=
           spec.engines.end();
}

void check_axis(const GridAxis& axis, const char* name) {
    if (axis.steps < 2) {
        throw std::invalid_argument(std::string(name) +
                                    ": swept axis needs at least 2 steps");
    }
}

// Gate fock usage on the whole grid before computing anything.
void check_fock_envelope(double gain, const StimulusParams& s) {
    if (gain > kOracleMaxGain || s.alpha_modulus > kOracleMaxStimulus ||
        s.beta_modulus > kOracleMaxStimulus) {
        throw EnvelopeExceeded(
            "fock engine requested outside its operating envelope");
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void describe_common(SweepTable& table, const SweepSpec& spec) {
    table.comments.push_back(std::string("engine_version = ") + kEngineVersion);
    table.comments.push_back("pump_phase = " + fmt(spec.pump_phase));
    std::string thetas = "theta =";
    for (double t : spec.thetas) thetas += " " + fmt(t);
    table.comments.push_back(thetas);
    if (spec.stimulus.equal_contribution) {
        table.comments.push_back(
            "stimulus = equal_contribution (|alpha|^4 = 2 sinh^4 g + sinh^2 g)");
    } else {
        table.comments.push_back("stimulus = explicit |alpha| = " +
                                 fmt(spec.stimulus.alpha_modulus));
    }
    std::string engines = "engines =";
    for (Engine e : spec.engines) engines += std::string(" ") + engine_name(e);
    table.comments.push_back(engines);
}

// Visibility by scanning the closed-form fringe; the scan includes the exact
// extrema at psi = 0 and psi = pi/2.
double extract_visibility(const SqueezerParams& p, const StimulusParams& s) {
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (int i = 0; i <= 720; ++i) {
        const double psi = 2.0 * kPi * i / 720.0;
        const double v = coincidence(p, s, InterferometerPhase{psi});
        if (first) {
            lo = hi = v;
            first = false;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (hi + lo <= 0.0) {
        throw DegenerateStatistics("flat zero fringe: visibility undefined");
    }
    return (hi - lo) / (hi + lo);
}

}  // namespace

double GridAxis::at(int i) const {
    if (steps < 2) return start;
    return start + (stop - start) * i / (steps - 1);
}

double equal_contribution_alpha(const SqueezerParams& p) {
    if (p.gain <= 0.0) {
        throw DegenerateStatistics(
            "equal-contribution rule undefined at g = 0");
    }
    const double sh2 = std::sinh(p.gain) * std::sinh(p.gain);
    return std::pow(2.0 * sh2 * sh2 + sh2, 0.25);
}

StimulusParams resolve_stimulus(const StimulusMode& mode,
                                const SqueezerParams& p, double theta) {
    const double mod = mode.equal_contribution ? equal_contribution_alpha(p)
                                               : mode.alpha_modulus;
    return StimulusParams::symmetric(mod, theta);
}

SweepTable run_fringe(const SweepSpec& spec) {
    check_axis(spec.psi_range, "psi");
    const SqueezerParams p(spec.gain, spec.pump_phase);

    std::vector<StimulusParams> stimuli;
    for (double theta : spec.thetas) {
        stimuli.push_back(resolve_stimulus(spec.stimulus, p, theta));
    }
    if (has_engine(spec, Engine::kFock)) {
        for (const auto& s : stimuli) check_fock_envelope(spec.gain, s);
    }

    // Spontaneous coincidence at psi = 0, computed through the same code path
    // as the reference column so the normalized column is exactly 1 there.
    const double spont_ref =
        coincidence(p, StimulusParams::none(), InterferometerPhase{0.0});
    double norm = 1.0;
    if (spec.normalize) {
        if (spont_ref <= 0.0) {
            throw DegenerateStatistics(
                "normalization undefined: spontaneous coincidence is zero");
        }
        norm = spont_ref;
    }

    SweepTable table;
    describe_common(table, spec);
    table.comments.push_back("gain = " + fmt(spec.gain));
    for (std::size_t k = 0; k < stimuli.size(); ++k) {
        table.comments.push_back("alpha_modulus[theta" + std::to_string(k) +
                                 "] = " + fmt(stimuli[k].alpha_modulus));
    }
    table.comments.push_back(
        std::string("normalization = ") +
        (spec.normalize ? "spontaneous coincidence at psi = 0" : "off"));

    table.columns.push_back("psi");
    table.columns.push_back("spontaneous_ref");
    for (std::size_t k = 0; k < stimuli.size(); ++k) {
        for (Engine e : spec.engines) {
            table.columns.push_back(std::string(engine_name(e)) + "_theta" +
                                    std::to_string(k));
        }
    }
    table.columns.push_back("normalization");

    // Fock states do not depend on psi; build once per stimulus.
    std::vector<FockState> fock_states;
    if (has_engine(spec, Engine::kFock)) {
        for (const auto& s : stimuli) fock_states.push_back(build_state(p, s));
    }

    const StimulusParams no_stim = StimulusParams::none();
    for (int i = 0; i < spec.psi_range.steps; ++i) {
        const double psi = spec.psi_range.at(i);
        const InterferometerPhase ph{psi};
        std::vector<double> row{psi, coincidence(p, no_stim, ph) / norm};
        for (std::size_t k = 0; k < stimuli.size(); ++k) {
            for (Engine e : spec.engines) {
                double v = 0.0;
                switch (e) {
                    case Engine::kClosed:
                        v = coincidence(p, stimuli[k], ph);
                        break;
                    case Engine::kMoment:
                        v = coincidence_general(p, stimuli[k], ph);
                        break;
                    case Engine::kFock:
                        v = measure(fock_states[k], ph).coincidence;
                        break;
                }
                row.push_back(v / norm);
            }
        }
        row.push_back(norm);
        table.rows.push_back(std::move(row));
    }
    return table;
}

SweepTable run_visibility(const SweepSpec& spec) {
    check_axis(spec.gain_range, "gain");

    SweepTable table;
    describe_common(table, spec);
    table.comments.push_back("gain_range = " + fmt(spec.gain_range.start) +
                             ":" + fmt(spec.gain_range.stop) + ":" +
                             std::to_string(spec.gain_range.steps));
    table.columns = {"gain", "theta", "visibility", "visibility_spontaneous"};

    for (int i = 0; i < spec.gain_range.steps; ++i) {
        const SqueezerParams p(spec.gain_range.at(i), spec.pump_phase);
        const double v_ref = spontaneous_visibility_limit(p);
        for (double theta : spec.thetas) {
            const StimulusParams s = resolve_stimulus(spec.stimulus, p, theta);
            const double v = visibility(p, s);
            const double v_fringe = extract_visibility(p, s);
            if (std::abs(v - v_fringe) > 1e-9) {
                throw NumericalInconsistency(
                    "fringe-extracted visibility disagrees with B/(A+B)");
            }
            table.rows.push_back({p.gain, theta, v, v_ref});
        }
    }
    return table;
}

SweepTable run_enhancement(const SweepSpec& spec) {
    check_axis(spec.gain_range, "gain");

    SweepTable table;
    describe_common(table, spec);
    table.comments.push_back("gain_range = " + fmt(spec.gain_range.start) +
                             ":" + fmt(spec.gain_range.stop) + ":" +
                             std::to_string(spec.gain_range.steps));
    table.columns = {"gain", "theta", "enhancement_ratio"};

    for (int i = 0; i < spec.gain_range.steps; ++i) {
        const SqueezerParams p(spec.gain_range.at(i), spec.pump_phase);
        for (double theta : spec.thetas) {
            const StimulusParams s = resolve_stimulus(spec.stimulus, p, theta);
            table.rows.push_back({p.gain, theta, enhancement_ratio(p, s)});
        }
    }
    return table;
}

SweepTable run_singles(const SweepSpec& spec) {
    check_axis(spec.psi_range, "psi");
    const SqueezerParams p(spec.gain, spec.pump_phase);

    std::vector<StimulusParams> stimuli;
    for (double theta : spec.thetas) {
        stimuli.push_back(resolve_stimulus(spec.stimulus, p, theta));
    }
    if (has_engine(spec, Engine::kFock)) {
        for (const auto& s : stimuli) check_fock_envelope(spec.gain, s);
    }

    SweepTable table;
    describe_common(table, spec);
    table.comments.push_back("gain = " + fmt(spec.gain));
    table.comments.push_back(
        "closed-engine singles are the psi = 0 value (the closed form is only "
        "defined there)");
    table.columns.push_back("psi");
    for (std::size_t k = 0; k < stimuli.size(); ++k) {
        for (Engine e : spec.engines) {
            table.columns.push_back(std::string(engine_name(e)) + "_theta" +
                                    std::to_string(k));
        }
    }

    std::vector<FockState> fock_states;
    if (has_engine(spec, Engine::kFock)) {
        for (const auto& s : stimuli) fock_states.push_back(build_state(p, s));
    }

    for (int i = 0; i < spec.psi_range.steps; ++i) {
        const double psi = spec.psi_range.at(i);
        const InterferometerPhase ph{psi};
        std::vector<double> row{psi};
        for (std::size_t k = 0; k < stimuli.size(); ++k) {
            for (Engine e : spec.engines) {
                double v = 0.0;
                switch (e) {
                    case Engine::kClosed:
                        v = single_counts(p, stimuli[k]);
                        break;
                    case Engine::kMoment:
                        v = single_counts_general(p, stimuli[k], ph);
                        break;
                    case Engine::kFock:
                        v = measure(fock_states[k], ph).single_a;
                        break;
                }
                row.push_back(v);
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

namespace {

double relative_deviation(double x, double y) {
    const double denom = std::max(std::abs(x), std::abs(y));
    if (denom < 1e-300) return 0.0;
    return std::abs(x - y) / denom;
}

// Fock comparison: relative when the value is large enough to carry relative
// meaning, absolute below 1e-3.
bool fock_close(double x, double y, double rel_tol, double* dev) {
    const double scale = std::max(std::abs(x), std::abs(y));
    if (scale < 1e-3) {
        *dev = std::abs(x - y);
        return *dev <= 1e-9;
    }
    *dev = std::abs(x - y) / scale;
    return *dev <= rel_tol;
}

}  // namespace

VerifyReport verify(const VerifySpec& spec) {
    VerifyReport report;
    report.pass = true;

    // Closed form vs moment engine on random symmetric points.
    std::mt19937 rng(spec.seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst_cm = 0.0;
    for (int i = 0; i < spec.random_points; ++i) {
        const SqueezerParams p(3.0 * u01(rng), 2.0 * kPi * u01(rng));
        const StimulusParams s =
            StimulusParams::symmetric(2.0 * u01(rng), 2.0 * kPi * u01(rng));
        const InterferometerPhase psi{2.0 * kPi * u01(rng)};

        worst_cm = std::max(
            worst_cm, relative_deviation(single_counts(p, s),
                                         single_counts_general(
                                             p, s, InterferometerPhase{0.0})));
        worst_cm = std::max(
            worst_cm, relative_deviation(coincidence(p, s, psi),
                                         coincidence_general(p, s, psi)));
    }
    report.max_dev_closed_moment = worst_cm;
    const bool cm_pass = worst_cm <= spec.tol_closed_moment;
    report.pass = report.pass && cm_pass;
    {
        std::ostringstream line;
        line << "closed vs moment: " << spec.random_points
             << " random symmetric points, max relative deviation "
             << worst_cm << " (tol " << spec.tol_closed_moment
             << "): " << (cm_pass ? "PASS" : "FAIL");
        report.lines.push_back(line.str());
    }

    if (!spec.with_fock) return report;

    // Gate the whole grid on the oracle envelope before building anything.
    for (double g : spec.gains) {
        for (double am : spec.alpha_moduli) {
            check_fock_envelope(g, StimulusParams::symmetric(am, 0.0));
        }
    }

    double worst_fock = 0.0;
    bool fock_pass = true;
    int points = 0;
    for (double g : spec.gains) {
        for (double am : spec.alpha_moduli) {
            for (double delta : spec.deltas) {
                // Realize delta = phi - 2 theta with theta = 0.
                const SqueezerParams p(g, delta);
                const StimulusParams s = StimulusParams::symmetric(am, 0.0);
                const FockState state = build_state(p, s);
                for (double psi : spec.psis) {
                    const InterferometerPhase ph{psi};
                    const DetectorCounts counts = measure(state, ph);
                    const double singles_m = single_counts_general(p, s, ph);
                    const double coinc_m = coincidence_general(p, s, ph);
                    const double coinc_c = coincidence(p, s, ph);
                    double dev = 0.0;
                    fock_pass &= fock_close(counts.single_a, singles_m,
                                            spec.tol_fock, &dev);
                    worst_fock = std::max(worst_fock, dev);
                    fock_pass &= fock_close(counts.coincidence, coinc_m,
                                            spec.tol_fock, &dev);
                    worst_fock = std::max(worst_fock, dev);
                    fock_pass &= fock_close(counts.coincidence, coinc_c,
                                            spec.tol_fock, &dev);
                    worst_fock = std::max(worst_fock, dev);
                    ++points;
                }
            }
        }
    }
    report.max_dev_fock = worst_fock;
    report.pass = report.pass && fock_pass;
    {
        std::ostringstream line;
        line << "closed/moment vs fock: " << points
             << " grid points, max deviation " << worst_fock << " (tol "
             << spec.tol_fock << " rel, 1e-9 abs below 1e-3): "
             << (fock_pass ? "PASS" : "FAIL");
        report.lines.push_back(line.str());
    }
    return report;
}

void write_csv(const SweepTable& table, std::ostream& out) {
    for (const auto& c : table.comments) out << "# " << c << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << fmt(row[i]);
        }
        out << "\n";
    }
}

std::vector<std::pair<std::string, std::string>> parse_config(
    std::istream& in) {
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };

    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": empty key");
        }
        entries.emplace_back(key, value);
    }
    return entries;
}

}  // namespace pdcsim
