// Command-line front end: parameter sweeps of the coincidence fringe,
// visibility, enhancement ratio, and single counts, plus the cross-engine
// verification run. Emits CSV to stdout or a file.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure,
// 3 envelope / degenerate-parameter error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pdcsim/sweep.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CommonOptions {
    double gain = 0.5;
    std::string gain_range;  // START:STOP:STEPS
    int psi_steps = 721;
    std::vector<double> thetas{0.0, kPi / 4.0, kPi / 2.0};
    double pump_phase = kPi;
    double alpha = -1.0;  // < 0 means equal-contribution (the default)
    bool equal_contribution = false;
    std::string engines = "closed";
    std::string normalize = "on";
    std::string output;
    std::string config_path;
};

void add_common_flags(CLI::App* cmd, CommonOptions* opt) {
    cmd->add_option("--gain", opt->gain, "Squeezer gain g");
    cmd->add_option("--gain-range", opt->gain_range,
                    "Gain grid START:STOP:STEPS");
    cmd->add_option("--psi-steps", opt->psi_steps,
                    "Samples of psi over [0, 2pi]");
    cmd->add_option("--theta", opt->thetas, "Stimulus phases (radians)")
        ->delimiter(',');
    cmd->add_option("--pump-phase", opt->pump_phase, "Pump phase phi");
    cmd->add_option("--alpha", opt->alpha, "Explicit stimulus modulus");
    cmd->add_flag("--equal-contribution", opt->equal_contribution,
                  "Pick |alpha| so coherent and spontaneous coincidences "
                  "match (default unless --alpha is given)");
    cmd->add_option("--engines", opt->engines,
                    "Comma list from closed,moment,fock");
    cmd->add_option("--normalize", opt->normalize,
                    "on|off: divide fringes by the spontaneous psi=0 value");
    cmd->add_option("--output", opt->output, "CSV file (default stdout)");
    cmd->add_option("--config", opt->config_path,
                    "key = value file; command-line flags take precedence");
}

// Apply config-file values to options the command line left untouched.
void apply_config(CLI::App* cmd, CommonOptions* opt) {
    if (opt->config_path.empty()) return;
    std::ifstream in(opt->config_path);
    if (!in) {
        throw CLI::ValidationError("--config",
                                   "cannot open " + opt->config_path);
    }
    for (const auto& [key, value] : pdcsim::parse_config(in)) {
        const CLI::Option* given = cmd->get_option_no_throw("--" + key);
        if (given == nullptr || key == "config") {
            throw CLI::ValidationError("--config", "unknown key '" + key + "'");
        }
        if (given->count() > 0) continue;  // flag overrides config

        std::istringstream v(value);
        if (key == "gain") v >> opt->gain;
        else if (key == "gain-range") opt->gain_range = value;
        else if (key == "psi-steps") v >> opt->psi_steps;
        else if (key == "theta") {
            opt->thetas.clear();
            std::istringstream list(value);
            std::string item;
            while (std::getline(list, item, ',')) {
                opt->thetas.push_back(std::stod(item));
            }
        } else if (key == "pump-phase") v >> opt->pump_phase;
        else if (key == "alpha") v >> opt->alpha;
        else if (key == "equal-contribution") opt->equal_contribution = true;
        else if (key == "engines") opt->engines = value;
        else if (key == "normalize") opt->normalize = value;
        else if (key == "output") opt->output = value;
        if (v.fail()) {
            throw CLI::ValidationError("--config",
                                       "bad value for '" + key + "'");
        }
    }
}

pdcsim::SweepSpec build_spec(const CLI::App* cmd, const CommonOptions& opt) {
    pdcsim::SweepSpec spec;
    spec.gain = opt.gain;
    spec.pump_phase = opt.pump_phase;
    spec.thetas = opt.thetas;
    spec.psi_range = {0.0, 2.0 * kPi, opt.psi_steps};

    if (!opt.gain_range.empty()) {
        double start = 0.0, stop = 0.0;
        int steps = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(opt.gain_range);
        in >> start >> c1 >> stop >> c2 >> steps;
        if (in.fail() || c1 != ':' || c2 != ':') {
            throw CLI::ValidationError("--gain-range",
                                       "expected START:STOP:STEPS");
        }
        spec.gain_range = {start, stop, steps};
    }

    if (opt.equal_contribution && opt.alpha >= 0.0) {
        throw CLI::ValidationError(
            "--alpha", "--alpha and --equal-contribution are exclusive");
    }
    if (opt.alpha >= 0.0) {
        spec.stimulus.equal_contribution = false;
        spec.stimulus.alpha_modulus = opt.alpha;
    }

    spec.engines.clear();
    std::istringstream engines(opt.engines);
    std::string name;
    while (std::getline(engines, name, ',')) {
        if (name == "closed") spec.engines.push_back(pdcsim::Engine::kClosed);
        else if (name == "moment") spec.engines.push_back(pdcsim::Engine::kMoment);
        else if (name == "fock") spec.engines.push_back(pdcsim::Engine::kFock);
        else throw CLI::ValidationError("--engines", "unknown engine " + name);
    }
    if (spec.engines.empty()) {
        throw CLI::ValidationError("--engines", "need at least one engine");
    }

    if (opt.normalize == "on") spec.normalize = true;
    else if (opt.normalize == "off") spec.normalize = false;
    else throw CLI::ValidationError("--normalize", "expected on|off");

    (void)cmd;
    return spec;
}

void emit(const pdcsim::SweepTable& table, const CommonOptions& opt) {
    if (opt.output.empty()) {
        pdcsim::write_csv(table, std::cout);
        return;
    }
    std::ofstream out(opt.output);
    if (!out) {
        throw CLI::ValidationError("--output", "cannot write " + opt.output);
    }
    pdcsim::write_csv(table, out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Photon-counting statistics of a coherent-beam-stimulated "
        "down-converter feeding a two-photon interferometer"};
    app.require_subcommand(1);

    CommonOptions fringe_opt, vis_opt, enh_opt, singles_opt, verify_opt;
    CLI::App* fringe = app.add_subcommand(
        "fringe", "Coincidence counts vs interferometer phase psi");
    add_common_flags(fringe, &fringe_opt);
    CLI::App* vis = app.add_subcommand(
        "visibility", "Two-photon visibility vs gain, with Eq.-(9)-style "
                      "spontaneous reference");
    add_common_flags(vis, &vis_opt);
    CLI::App* enh = app.add_subcommand(
        "enhancement", "Stimulated-over-spontaneous coincidence ratio vs gain");
    add_common_flags(enh, &enh_opt);
    CLI::App* singles = app.add_subcommand(
        "singles", "Mean detector counts vs psi (moment engine)");
    add_common_flags(singles, &singles_opt);
    CLI::App* ver = app.add_subcommand(
        "verify", "Cross-check closed forms, moment engine, and Fock oracle");
    add_common_flags(ver, &verify_opt);

    try {
        app.parse(argc, argv);

        if (fringe->parsed()) {
            apply_config(fringe, &fringe_opt);
            pdcsim::SweepSpec spec = build_spec(fringe, fringe_opt);
            spec.quantity = pdcsim::Quantity::kFringe;
            emit(pdcsim::run_fringe(spec), fringe_opt);
        } else if (vis->parsed()) {
            apply_config(vis, &vis_opt);
            pdcsim::SweepSpec spec = build_spec(vis, vis_opt);
            spec.quantity = pdcsim::Quantity::kVisibilityVsGain;
            if (vis_opt.gain_range.empty()) spec.gain_range = {0.1, 3.0, 30};
            emit(pdcsim::run_visibility(spec), vis_opt);
        } else if (enh->parsed()) {
            apply_config(enh, &enh_opt);
            pdcsim::SweepSpec spec = build_spec(enh, enh_opt);
            spec.quantity = pdcsim::Quantity::kEnhancementVsGain;
            if (enh_opt.gain_range.empty()) spec.gain_range = {0.1, 3.0, 30};
            emit(pdcsim::run_enhancement(spec), enh_opt);
        } else if (singles->parsed()) {
            apply_config(singles, &singles_opt);
            pdcsim::SweepSpec spec = build_spec(singles, singles_opt);
            spec.quantity = pdcsim::Quantity::kSingles;
            if (singles_opt.engines == "closed") {
                spec.engines = {pdcsim::Engine::kMoment};
            }
            emit(pdcsim::run_singles(spec), singles_opt);
        } else if (ver->parsed()) {
            apply_config(ver, &verify_opt);
            pdcsim::VerifySpec spec;
            const pdcsim::VerifyReport report = pdcsim::verify(spec);
            for (const auto& line : report.lines) {
                std::cout << line << "\n";
            }
            std::cout << (report.pass ? "PASS" : "FAIL") << "\n";
            if (!report.pass) return 2;
        }
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 1;
    } catch (const pdcsim::EnvelopeExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const pdcsim::DegenerateStatistics& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
