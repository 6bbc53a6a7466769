#include "pdcsim/sweep.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "pdcsim/closed_form.hpp"

using namespace pdcsim;

namespace {

constexpr double kPi = 3.14159265358979323846;

int column_index(const SweepTable& t, const std::string& name) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (t.columns[i] == name) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace

TEST_CASE("equal-contribution stimulus") {
    SUBCASE("vanishes with the gain") {
        CHECK(equal_contribution_alpha(SqueezerParams(1e-4, 0.0)) <
              0.011);
    }
    SUBCASE("g = 0.5") {
        CHECK(equal_contribution_alpha(SqueezerParams(0.5, 0.0)) ==
              doctest::Approx(0.8045549952445791).epsilon(1e-12));
    }
    SUBCASE("g = 1.7 intensity feeds the enhancement check") {
        const double a = equal_contribution_alpha(SqueezerParams(1.7, 0.0));
        CHECK(a * a == doctest::Approx(10.246056917119693).epsilon(1e-10));
    }
    SUBCASE("undefined at g = 0") {
        CHECK_THROWS_AS(equal_contribution_alpha(SqueezerParams(0.0, 0.0)),
                        DegenerateStatistics);
    }
    SUBCASE("the rule equates the two psi = 0 coincidences") {
        for (double g : {0.2, 0.7, 1.9}) {
            const SqueezerParams p(g, 0.0);
            const double a = equal_contribution_alpha(p);
            // Coherent-only coincidence at psi = 0 is |alpha|^4.
            CHECK(a * a * a * a ==
                  doctest::Approx(spontaneous_strength_limit(p)).epsilon(1e-12));
        }
    }
}

TEST_CASE("fringe sweep") {
    SweepSpec spec;
    spec.quantity = Quantity::kFringe;
    spec.gain = 0.5;
    spec.thetas = {kPi / 2.0};  // delta = 0 given pump phase pi
    spec.psi_range = {0.0, 2.0 * kPi, 721};
    spec.engines = {Engine::kClosed};

    SUBCASE("extrema sit at psi in {0, pi} and minima at pi/2") {
        const SweepTable t = run_fringe(spec);
        const int c = column_index(t, "closed_theta0");
        REQUIRE(c >= 0);
        double hi = -1e300, lo = 1e300;
        int hi_at = -1, lo_at = -1;
        for (int i = 0; i < 361; ++i) {  // first period [0, pi]
            if (t.rows[i][c] > hi) { hi = t.rows[i][c]; hi_at = i; }
            if (t.rows[i][c] < lo) { lo = t.rows[i][c]; lo_at = i; }
        }
        CHECK(hi_at == 0);
        CHECK(lo_at == 180);  // psi = pi/2
        CHECK(t.rows[360][c] == doctest::Approx(hi).epsilon(1e-12));
    }

    SUBCASE("normalized spontaneous reference peaks at exactly 1") {
        const SweepTable t = run_fringe(spec);
        const int c = column_index(t, "spontaneous_ref");
        REQUIRE(c >= 0);
        CHECK(t.rows[0][c] == 1.0);
        for (const auto& row : t.rows) CHECK(row[c] <= 1.0 + 1e-15);
    }

    SUBCASE("g = 2 stimulated fringe beats the spontaneous reference 100-fold") {
        SweepSpec big = spec;
        big.gain = 2.0;
        const SweepTable t = run_fringe(big);
        const int c = column_index(t, "closed_theta0");
        CHECK(t.rows[0][c] > 100.0);
    }

    SUBCASE("spontaneous only: normalized maximum is 1 by construction") {
        SweepSpec spont = spec;
        spont.stimulus.equal_contribution = false;
        spont.stimulus.alpha_modulus = 0.0;
        const SweepTable t = run_fringe(spont);
        const int c = column_index(t, "closed_theta0");
        CHECK(t.rows[0][c] == doctest::Approx(1.0).epsilon(1e-14));
    }

    SUBCASE("fock engine outside the envelope is rejected before computing") {
        SweepSpec bad = spec;
        bad.gain = 2.0;
        bad.engines = {Engine::kClosed, Engine::kFock};
        CHECK_THROWS_AS(run_fringe(bad), EnvelopeExceeded);
    }

    SUBCASE("engines agree along the fringe") {
        SweepSpec multi = spec;
        multi.psi_range = {0.0, 2.0 * kPi, 9};
        multi.engines = {Engine::kClosed, Engine::kMoment, Engine::kFock};
        const SweepTable t = run_fringe(multi);
        const int c0 = column_index(t, "closed_theta0");
        const int c1 = column_index(t, "moment_theta0");
        const int c2 = column_index(t, "fock_theta0");
        for (const auto& row : t.rows) {
            CHECK(std::abs(row[c0] - row[c1]) <= 1e-10 * std::abs(row[c0]));
            CHECK(std::abs(row[c0] - row[c2]) <=
                  1e-6 * std::max(1e-3, std::abs(row[c0])));
        }
    }
}

TEST_CASE("visibility sweep") {
    SweepSpec spec;
    spec.quantity = Quantity::kVisibilityVsGain;
    // The equal-contribution delta = 0 curve overtakes the spontaneous
    // reference near g = 0.47 and stays above it from there on.
    spec.gain_range = {0.5, 3.0, 15};
    spec.thetas = {kPi / 2.0};

    const SweepTable t = run_visibility(spec);
    const int cv = column_index(t, "visibility");
    const int cr = column_index(t, "visibility_spontaneous");
    REQUIRE(cv >= 0);
    REQUIRE(cr >= 0);
    SUBCASE("delta = 0 curve lies above the spontaneous reference") {
        for (const auto& row : t.rows) CHECK(row[cv] > row[cr]);
    }
    SUBCASE("reference column matches the printed limit") {
        for (const auto& row : t.rows) {
            CHECK(row[cr] ==
                  doctest::Approx(spontaneous_visibility_limit(
                                      SqueezerParams(row[0], kPi)))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("visibility sweep at delta = pi approaches the reference") {
    SweepSpec spec;
    spec.quantity = Quantity::kVisibilityVsGain;
    spec.gain_range = {2.0, 4.0, 5};
    spec.thetas = {0.0};  // pump phase pi => delta = pi
    const SweepTable t = run_visibility(spec);
    const int cv = column_index(t, "visibility");
    const int cr = column_index(t, "visibility_spontaneous");
    for (const auto& row : t.rows) {
        CHECK(row[cv] <= row[cr] + 1e-9);
        CHECK(row[cv] > row[cr] - 0.05);
    }
}

TEST_CASE("enhancement sweep") {
    SweepSpec spec;
    spec.quantity = Quantity::kEnhancementVsGain;
    spec.thetas = {kPi / 2.0};

    SUBCASE("g = 1.7, delta = 0 lands near 10^3") {
        spec.gain_range = {1.7, 1.7 + 1e-9, 2};
        const SweepTable t = run_enhancement(spec);
        CHECK(t.rows[0][2] == doctest::Approx(983.5514074506052).epsilon(1e-8));
    }
    SUBCASE("small-gain limit is finite") {
        spec.gain_range = {1e-3, 2e-3, 2};
        const SweepTable t = run_enhancement(spec);
        CHECK(std::isfinite(t.rows[0][2]));
        CHECK(t.rows[0][2] > 1.0);
    }
    SUBCASE("explicit alpha = 0 gives ratio 1 everywhere") {
        spec.gain_range = {0.3, 2.0, 6};
        spec.stimulus.equal_contribution = false;
        spec.stimulus.alpha_modulus = 0.0;
        const SweepTable t = run_enhancement(spec);
        for (const auto& row : t.rows) {
            CHECK(row[2] == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("singles sweep uses the moment engine across psi") {
    SweepSpec spec;
    spec.quantity = Quantity::kSingles;
    spec.gain = 0.4;
    spec.thetas = {kPi / 2.0};
    spec.psi_range = {0.0, 2.0 * kPi, 9};
    spec.engines = {Engine::kClosed, Engine::kMoment};
    const SweepTable t = run_singles(spec);
    const int cc = column_index(t, "closed_theta0");
    const int cm = column_index(t, "moment_theta0");
    // Closed column is pinned at its psi = 0 value; moment column moves.
    CHECK(t.rows[0][cm] == doctest::Approx(t.rows[0][cc]).epsilon(1e-12));
    for (const auto& row : t.rows) {
        CHECK(row[cc] == doctest::Approx(t.rows[0][cc]).epsilon(1e-14));
    }
}

TEST_CASE("verify") {
    SUBCASE("default grid passes") {
        VerifySpec spec;
        spec.random_points = 200;  // full grid runs in the acceptance suite
        spec.gains = {0.0, 0.5};
        spec.alpha_moduli = {0.0, 1.0};
        spec.deltas = {0.0, kPi};
        spec.psis = {0.0, 1.2};
        const VerifyReport report = verify(spec);
        for (const auto& line : report.lines) INFO(line);
        CHECK(report.pass);
    }
    SUBCASE("tolerance tighter than double precision fails") {
        VerifySpec spec;
        spec.random_points = 50;
        spec.with_fock = false;
        spec.tol_closed_moment = 1e-16;
        CHECK_FALSE(verify(spec).pass);
    }
    SUBCASE("grid outside the envelope is rejected before any computation") {
        VerifySpec spec;
        spec.gains = {0.5, 2.0};
        CHECK_THROWS_AS(verify(spec), EnvelopeExceeded);
    }
}

TEST_CASE("csv emission") {
    SweepSpec spec;
    spec.quantity = Quantity::kFringe;
    spec.gain = 0.5;
    spec.thetas = {0.0, kPi / 2.0};
    spec.psi_range = {0.0, 2.0 * kPi, 33};

    SUBCASE("deterministic output") {
        std::ostringstream a, b;
        write_csv(run_fringe(spec), a);
        write_csv(run_fringe(spec), b);
        CHECK(a.str() == b.str());
        CHECK(a.str().find("# ") == 0);
    }

    SUBCASE("values round-trip bit-exactly at 17 significant digits") {
        const SweepTable t = run_fringe(spec);
        std::ostringstream out;
        write_csv(t, out);
        std::istringstream in(out.str());
        std::string line;
        std::size_t row = 0;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (line.find("psi") == 0) continue;  // header row
            REQUIRE(row < t.rows.size());
            std::size_t col = 0, pos = 0;
            while (pos <= line.size()) {
                const auto comma = line.find(',', pos);
                const std::string field =
                    line.substr(pos, comma == std::string::npos
                                         ? std::string::npos
                                         : comma - pos);
                CHECK(std::strtod(field.c_str(), nullptr) == t.rows[row][col]);
                ++col;
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            CHECK(col == t.columns.size());
            ++row;
        }
        CHECK(row == t.rows.size());
    }
}

TEST_CASE("config parsing") {
    SUBCASE("key = value with comments and blanks") {
        std::istringstream in(
            "# sweep reproduction\n"
            "gain = 0.5\n"
            "\n"
            "psi-steps = 11  # dense enough\n"
            "engines=closed,moment\n");
        const auto entries = parse_config(in);
        REQUIRE(entries.size() == 3);
        CHECK(entries[0] == std::pair<std::string, std::string>{"gain", "0.5"});
        CHECK(entries[1].second == "11");
        CHECK(entries[2].second == "closed,moment");
    }
    SUBCASE("malformed lines rejected") {
        std::istringstream in("gain 0.5\n");
        CHECK_THROWS_AS(parse_config(in), std::invalid_argument);
    }
}
