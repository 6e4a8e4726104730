#include "magmech/errors.hpp"
#include "magmech/oracle.hpp"
#include "magmech/presets.hpp"
#include "magmech/response.hpp"

#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <set>
#include <utility>

using namespace magmech;

namespace {

using Pattern = std::set<std::pair<int, int>>;

Pattern nonzeros(const SidebandMatrix& m) {
    Pattern out;
    for (int i = 0; i < kSidebandDim; ++i)
        for (int j = 0; j < kSidebandDim; ++j)
            if (m(i, j) != cdouble{}) out.emplace(i, j);
    return out;
}

Pattern minus(Pattern a, const Pattern& b) {
    for (const auto& e : b) a.erase(e);
    return a;
}

}  // namespace

TEST_CASE("chain and linear solve agree on the coupling ladder") {
    for (const char* name : {"fig2a", "fig2b", "fig2c", "fig2d", "fig2e", "fig2f"}) {
        const auto m = test::model_for(name);
        std::vector<double> grid;
        for (int i = 0; i <= 400; ++i) grid.push_back(2.0 * m.omega_b * i / 400.0);
        const auto report = cross_validate(m, grid);
        INFO(name << " worst at delta/omega_b = " << report.argmax_delta / m.omega_b);
        CHECK(report.flagged == 0);
        CHECK(report.max_rel_err <= 1e-6);
    }
}

TEST_CASE("bare cavity solve is the Lorentzian") {
    const auto m = build_model(test::uncoupled());
    for (double r : {0.0, 0.5, 0.97, 1.0, 1.2}) {
        const double delta = r * m.omega_b;
        const cdouble expected = 1.0 / cdouble(m.kappa_a, m.Delta_a_eff - delta);
        CHECK(test::rel_err(oracle_sideband_amplitude(m, delta), expected) < 1e-13);
    }
}

TEST_CASE("accepted solves have a small residual") {
    const auto m = test::model_for("fig2f");
    for (double r : {0.1, 0.77, 0.94, 0.99, 1.0, 1.06, 1.14, 1.9}) {
        const auto sol = solve_probe_response(assemble_sideband_matrix(m, r * m.omega_b));
        CHECK(sol.residual < 1e-10);
        CHECK(sol.condition > 0.0);
    }
}

TEST_CASE("upper sideband gives conjugate mechanical amplitudes") {
    const auto m = test::model_for("fig2f");
    for (double r : {0.3, 0.95, 1.0, 1.04, 1.7}) {
        const double delta = r * m.omega_b;
        OracleOptions upper;
        upper.sideband = Sideband::Upper;
        const auto lo = solve_probe_response(assemble_sideband_matrix(m, delta)).amplitudes;
        const auto up = solve_probe_response(assemble_sideband_matrix(m, delta, upper)).amplitudes;
        for (int k : {kQ1, kP1, kQ2, kP2, kQ3, kP3}) {
            CHECK(test::rel_err(up(k), std::conj(lo(k))) < 1e-10);
        }
        // Bosonic pairs swap under the conjugation.
        CHECK(test::rel_err(up(kAdag), std::conj(lo(kA))) < 1e-10);
        CHECK(test::rel_err(up(kM1), std::conj(lo(kM1dag))) < 1e-10);
    }
}

TEST_CASE("zeroing a coupling removes exactly its blocks") {
    const auto full_model = test::model_for("fig2f");
    const Pattern full = nonzeros(fluctuation_jacobian(full_model));

    struct Case {
        const char* name;
        double LinearizedModel::*field;
        Pattern removed;
    };
    const std::vector<Case> cases = {
        {"g_1", &LinearizedModel::g_1, {{kA, kM1}, {kM1, kA}, {kAdag, kM1dag}, {kM1dag, kAdag}}},
        {"g_2", &LinearizedModel::g_2, {{kA, kM2}, {kM2, kA}, {kAdag, kM2dag}, {kM2dag, kAdag}}},
        {"G_11", &LinearizedModel::G_11, {{kM1, kQ1}, {kM1dag, kQ1}, {kP1, kM1}, {kP1, kM1dag}}},
        {"G_22", &LinearizedModel::G_22, {{kM2, kQ2}, {kM2dag, kQ2}, {kP2, kM2}, {kP2, kM2dag}}},
        {"G_aa", &LinearizedModel::G_aa, {{kA, kQ3}, {kAdag, kQ3}, {kP3, kA}, {kP3, kAdag}}},
    };
    for (const auto& c : cases) {
        auto m = full_model;
        m.*(c.field) = 0.0;
        INFO(c.name);
        for (const auto& e : c.removed) CHECK(full.count(e) == 1);
        CHECK(nonzeros(fluctuation_jacobian(m)) == minus(full, c.removed));
    }
}

TEST_CASE("rotating-wave variant drops only the conjugate forces") {
    const auto m = test::model_for("fig2f");
    OracleOptions rwa;
    rwa.rotating_wave = true;
    const Pattern removed = minus(nonzeros(fluctuation_jacobian(m)), nonzeros(fluctuation_jacobian(m, rwa)));
    CHECK(removed == Pattern{{kP1, kM1dag}, {kP2, kM2dag}, {kP3, kAdag}});
    const double delta = 0.99 * m.omega_b;
    CHECK(test::rel_err(oracle_sideband_amplitude(m, delta, rwa), oracle_sideband_amplitude(m, delta)) > 1e-6);
}

TEST_CASE("mechanical pole is flagged and excluded") {
    auto m = test::model_for("fig2f");
    m.gamma_1 = 0.0;
    const std::vector<double> grid = {0.5 * m.omega_b1, m.omega_b1, 1.5 * m.omega_b1};
    const auto report = cross_validate(m, grid);
    REQUIRE(report.points.size() == 3);
    CHECK(report.points[1].flagged);
    CHECK_FALSE(report.points[1].rel_err.has_value());
    CHECK(report.flagged == 1);
    CHECK(report.argmax_delta != m.omega_b1);
    CHECK(report.max_rel_err < 1e-6);
}

TEST_CASE("singular sideband matrix throws") {
    auto m = build_model(test::uncoupled());
    m.kappa_a = 0.0;
    CHECK_THROWS_AS(oracle_sideband_amplitude(m, m.Delta_a_eff), SingularSystemError);
}

TEST_CASE("decoupled system structure") {
    const auto m = build_model(test::uncoupled());
    const double delta = 0.97 * m.omega_b;
    const auto sys = assemble_sideband_matrix(m, delta);

    int sources = 0;
    for (int i = 0; i < kSidebandDim; ++i) sources += sys.rhs(i) != cdouble{};
    CHECK(sources == 1);
    CHECK(sys.rhs(kA) != cdouble{});

    // Block-diagonal by mode: only the (q, p) pairs couple to each other.
    const Pattern mech = {{kQ1, kP1}, {kP1, kQ1}, {kQ2, kP2}, {kP2, kQ2}, {kQ3, kP3}, {kP3, kQ3}};
    Pattern diag;
    for (int i = 0; i < kSidebandDim; ++i) diag.emplace(i, i);
    const Pattern pattern = nonzeros(sys.matrix);
    CHECK(minus(minus(pattern, diag), mech).empty());

    const auto sol = solve_probe_response(sys);
    CHECK(sol.amplitudes(kAdag) == cdouble{});
    CHECK(test::rel_err(sol.a_minus, 1.0 / cdouble(m.kappa_a, m.Delta_a_eff - delta)) < 1e-14);

    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(2.0 * m.omega_b * i / 100);
    CHECK(cross_validate(m, grid).max_rel_err < 1e-12);
}

TEST_CASE("magnon diagonal entry by hand") {
    const auto m = build_model(table1_params());
    const double delta = 1.01 * m.omega_b;
    const auto sys = assemble_sideband_matrix(m, delta);
    const cdouble expected = -cdouble(m.kappa_m1, m.Delta_m1_eff - delta);
    CHECK(std::abs(sys.matrix(kM1, kM1) - expected) < 1e-9 * std::abs(expected));
    CHECK(sys.matrix(kQ1, kP1) == cdouble(m.omega_b1));
}

TEST_CASE("decoupled resonance gives 1/kappa") {
    const auto m = build_model(test::uncoupled());
    CHECK(test::rel_err(oracle_sideband_amplitude(m, m.Delta_a_eff), 1.0 / m.kappa_a) < 1e-15);
}
