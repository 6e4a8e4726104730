#include "magmech/analysis.hpp"
#include "magmech/errors.hpp"
#include "magmech/presets.hpp"

#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>

using namespace magmech;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SpectrumTable synthetic(const std::function<double(double)>& eps_R, double lo, double hi, int n) {
    SpectrumTable t;
    t.omega_b = 1.0;
    for (int i = 0; i < n; ++i) {
        SpectrumRow row;
        row.point.delta = lo + (hi - lo) * i / (n - 1);
        row.point.eps_R = eps_R(row.point.delta);
        t.rows.push_back(row);
    }
    return t;
}

SweepSpec unit_sweep(const LinearizedModel& m, int n = 2001, Method method = Method::Chain) {
    return {0.0, 2.0 * m.omega_b, n, method};
}

}  // namespace

TEST_CASE("sweep grid is uniform and inclusive") {
    const auto grid = sweep_grid({1.0, 3.0, 5, Method::Chain});
    REQUIRE(grid.size() == 5);
    CHECK(grid.front() == 1.0);
    CHECK(grid.back() == 3.0);
    CHECK_THAT(grid[2], WithinAbs(2.0, 1e-15));
}

TEST_CASE("sweep spec validation") {
    CHECK_THROWS_AS(validate(SweepSpec{1.0, 1.0, 10, Method::Chain}), ConfigError);
    CHECK_THROWS_AS(validate(SweepSpec{0.0, 1.0, 1, Method::Chain}), ConfigError);
    CHECK_NOTHROW(validate(SweepSpec{0.0, 1.0, 2, Method::Chain}));
    CHECK(method_from_string("both") == Method::Both);
    CHECK(to_string(Method::Oracle) == "oracle");
    CHECK_THROWS_AS(method_from_string("fast"), ConfigError);
}

TEST_CASE("bare cavity sweep matches the Lorentzian") {
    const auto m = build_model(test::uncoupled());
    const SweepSpec spec{m.Delta_a_eff - 5 * m.kappa_a, m.Delta_a_eff + 5 * m.kappa_a, 1001, Method::Chain};
    const auto table = sweep_spectrum(m, spec, Method::Chain);
    const double k = m.kappa_a;
    for (const auto& row : table.rows) {
        const double x = row.point.delta - m.Delta_a_eff;
        CHECK_THAT(row.point.eps_R, WithinRel(2 * k * k / (k * k + x * x), 1e-12));
    }
    // Sweep-level delay at the centre of a bare cavity is 2/kappa.
    CHECK_THAT(*table.rows[500].point.tau, WithinRel(2.0 / k, 1e-4));
    CHECK(find_windows(table).empty());
}

TEST_CASE("synthetic dip is recovered") {
    const double centre = 1.013;
    const double w = 0.004;
    const double d = 0.6;
    auto f = [&](double x) { return 1.0 - d / (1.0 + std::pow((x - centre) / w, 2)); };
    const auto table = synthetic(f, centre - 100 * w, centre + 100 * w, 4001);
    const auto windows = find_windows(table);
    REQUIRE(windows.size() == 1);
    const auto& win = windows.front();
    const double spacing = 200 * w / 4000;
    CHECK_THAT(win.dip_location, WithinAbs(centre, 0.05 * spacing));
    CHECK_THAT(win.dip_value, WithinAbs(1.0 - d, 1e-4));
    CHECK_THAT(win.width, WithinRel(2 * w, 2e-3));
    CHECK_THAT(win.asymmetry, WithinAbs(0.0, 1e-12));
    CHECK(win.left_peak < win.dip_location);
    CHECK(win.dip_location < win.right_peak);
    CHECK(win.depth > 0.0);
}

TEST_CASE("off-grid dip is refined between samples") {
    auto f = [](double x) { return 2.0 + (x - 0.3371) * (x - 0.3371); };
    const auto table = synthetic(f, 0.0, 1.0, 11);
    const auto windows = find_windows(table, 1e-3);
    REQUIRE(windows.size() == 1);
    CHECK_THAT(windows[0].dip_location, WithinAbs(0.3371, 1e-12));
}

TEST_CASE("tilted baseline gives a signed asymmetry") {
    auto f = [](double x) { return 1.0 + 0.5 * x - 0.5 / (1.0 + std::pow((x - 0.5) / 0.01, 2)); };
    const auto windows = find_windows(synthetic(f, 0.0, 1.0, 2001));
    REQUIRE(windows.size() == 1);
    CHECK(windows[0].asymmetry < 0.0);
    CHECK(windows[0].asymmetry >= -1.0);
}

TEST_CASE("shallow dips are filtered by prominence") {
    auto f = [](double x) {
        return 1.0 - 0.5 / (1.0 + std::pow((x - 0.3) / 0.01, 2)) -
               0.002 / (1.0 + std::pow((x - 0.7) / 0.01, 2));
    };
    const auto table = synthetic(f, 0.0, 1.0, 2001);
    CHECK(find_windows(table, 0.01).size() == 1);
    CHECK(find_windows(table, 0.001).size() == 2);
    CHECK_THROWS_AS(find_windows(table, 0.0), ConfigError);
    CHECK_THROWS_AS(find_windows(synthetic(f, 0.0, 1.0, 4)), ConfigError);
}

TEST_CASE("coupling ladder adds one window per coupling") {
    const char* names[] = {"fig2a", "fig2b", "fig2c", "fig2d", "fig2e", "fig2f"};
    for (std::size_t i = 0; i < 6; ++i) {
        const auto m = test::model_for(names[i]);
        const auto table = sweep_spectrum(m, unit_sweep(m), Method::Chain);
        INFO(names[i]);
        CHECK(find_windows(table, 0.01).size() == i);
    }
}

TEST_CASE("both methods produce agreeing tables") {
    const auto m = test::model_for("fig2f");
    const auto tables = sweep_spectrum(m, unit_sweep(m, 401, Method::Both));
    REQUIRE(tables.size() == 2);
    CHECK(tables[0].method == Method::Chain);
    CHECK(tables[1].method == Method::Oracle);
    for (std::size_t i = 0; i < tables[0].rows.size(); ++i) {
        CHECK(test::rel_err(tables[0].rows[i].point.a_minus, tables[1].rows[i].point.a_minus) < 1e-6);
    }
}

TEST_CASE("sweep phase is unwrapped") {
    const auto m = test::model_for("fig2f");
    const auto table = sweep_spectrum(m, unit_sweep(m), Method::Chain);
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        CHECK(std::abs(table.rows[i].point.phase - table.rows[i - 1].point.phase) < M_PI);
    }
}

TEST_CASE("sweeps are deterministic") {
    const auto m = test::model_for("fig2f");
    const auto a = sweep_spectrum(m, unit_sweep(m), Method::Chain);
    const auto b = sweep_spectrum(m, unit_sweep(m), Method::Chain);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].point.a_minus == b.rows[i].point.a_minus);
        CHECK(a.rows[i].point.phase == b.rows[i].point.phase);
    }
}

TEST_CASE("absorption contrast vanishes without a Barnett shift or couplings") {
    const auto m = test::model_for("fig9c");
    const auto zero_shift = eps_nonreciprocity(m, 0.0, unit_sweep(m, 501));
    for (const auto& row : zero_shift.rows) CHECK(row.eps_NR < 1e-12);

    const auto bare = build_model(test::uncoupled());
    const auto uncoupled = eps_nonreciprocity(bare, 0.5 * bare.omega_b, unit_sweep(bare, 501));
    for (const auto& row : uncoupled.rows) CHECK(row.eps_NR < 1e-12);
}

TEST_CASE("absorption contrast is bounded and symmetric in the pair") {
    const auto m = test::model_for("fig9c");
    const auto report = eps_nonreciprocity(m, 0.5 * m.omega_b, unit_sweep(m, 501));
    for (const auto& row : report.rows) {
        CHECK(row.eps_NR >= 0.0);
        CHECK(row.eps_NR <= 1.0);
        const auto swapped = contrast_ratio(row.eps_R_pos, row.eps_R_neg);
        REQUIRE(swapped.has_value());
        CHECK(*swapped == row.eps_NR);
    }
    // The template's own Barnett shift is irrelevant: the pair is rebuilt from |Delta_B|.
    const auto shifted = with_barnett_shift(m, 0.3 * m.omega_b);
    const auto again = eps_nonreciprocity(shifted, 0.5 * m.omega_b, unit_sweep(m, 501));
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        CHECK_THAT(again.rows[i].eps_NR, WithinAbs(report.rows[i].eps_NR, 1e-12));
    }
}

TEST_CASE("contrast ratio guard") {
    CHECK_FALSE(contrast_ratio(0.0, 0.0).has_value());
    CHECK_FALSE(contrast_ratio(1e-13, 1e-13).has_value());
    CHECK(*contrast_ratio(3.0, 1.0) == 0.5);
    CHECK(*contrast_ratio(-1.0, 3.0) == 2.0);
}

TEST_CASE("delay contrast uses the same grid") {
    const auto m = test::model_for("fig10");
    const SweepSpec spec{0.97 * m.omega_b, 1.01 * m.omega_b, 41, Method::Chain};
    const auto report = nonreciprocity(m, 0.5 * m.omega_b, spec, 1e-5 * m.omega_b);
    REQUIRE(report.rows.size() == 41);
    for (const auto& row : report.rows) {
        REQUIRE(row.tau_neg.has_value());
        REQUIRE(row.tau_pos.has_value());
        if (row.tau_NR_valid) {
            CHECK(*row.tau_NR == *contrast_ratio(*row.tau_neg, *row.tau_pos));
        }
    }
}

TEST_CASE("optimal ranges are contiguous runs above the threshold") {
    NonreciprocityReport r;
    for (int i = 0; i < 10; ++i) {
        NonreciprocityRow row;
        row.delta = i;
        row.eps_NR = (i == 2 || i == 3 || i == 7) ? 0.995 : 0.5;
        r.rows.push_back(row);
    }
    const auto ranges = optimal_ranges(r, ContrastKind::Absorption);
    REQUIRE(ranges.size() == 2);
    CHECK(ranges[0] == std::pair{2.0, 3.0});
    CHECK(ranges[1] == std::pair{7.0, 7.0});

    r.rows[3].eps_flagged = true;
    const auto broken = optimal_ranges(r, ContrastKind::Absorption);
    REQUIRE(broken.size() == 2);
    CHECK(broken[0] == std::pair{2.0, 2.0});
    CHECK(optimal_ranges(r, ContrastKind::Delay).empty());
}

TEST_CASE("two separated dips are both refined") {
    const double c1 = 0.3127;
    const double c2 = 0.7093;
    auto f = [&](double x) {
        return 1.0 - 0.4 / (1.0 + std::pow((x - c1) / 0.01, 2)) - 0.6 / (1.0 + std::pow((x - c2) / 0.01, 2));
    };
    const int n = 2001;
    const double h = 1.0 / (n - 1);
    const auto windows = find_windows(synthetic(f, 0.0, 1.0, n));
    REQUIRE(windows.size() == 2);
    CHECK(std::abs(windows[0].dip_index * h - c1) <= h);
    CHECK(std::abs(windows[1].dip_index * h - c2) <= h);
    CHECK_THAT(windows[0].dip_location, WithinAbs(c1, 1e-3 * h));
    CHECK_THAT(windows[1].dip_location, WithinAbs(c2, 1e-3 * h));
}

TEST_CASE("identical peaks give exactly zero asymmetry") {
    auto f = [](double x) { return std::abs(x - 0.5) < 0.25 ? 0.5 + std::abs(x - 0.5) : 1.0 - std::abs(x - 0.5) + 0.25; };
    const auto table = synthetic(f, 0.0, 1.0, 101);
    const auto windows = find_windows(table);
    REQUIRE(windows.size() == 1);
    CHECK(windows[0].asymmetry == 0.0);
}

TEST_CASE("single window is symmetric without rotation and mirrors with it") {
    auto p = find_preset("fig2b").series.front().params;
    auto asym = [&](double dB) {
        p.Delta_B = dB * p.omega_b1;
        const auto m = build_model(p);
        const auto windows = find_windows(sweep_spectrum(m, unit_sweep(m), Method::Chain));
        REQUIRE(windows.size() == 1);
        return windows.front().asymmetry;
    };
    CHECK(std::abs(asym(0.0)) < 0.05);
    const double plus = asym(0.5);
    const double minus = asym(-0.5);
    CHECK(std::abs(plus) > 0.05);
    CHECK_THAT(minus, WithinAbs(-plus, 1e-6));
}

TEST_CASE("window invariants on the ladder and the scans") {
    for (const char* name : {"fig2b", "fig2c", "fig2d", "fig2e", "fig2f", "fig4a", "fig4b", "fig4c", "fig4d", "fig4e"}) {
        for (const auto& series : find_preset(name).series) {
            const auto m = build_model(series.params);
            const auto windows = find_windows(sweep_spectrum(m, unit_sweep(m), Method::Chain));
            INFO(name << " " << series.label);
            for (std::size_t i = 0; i < windows.size(); ++i) {
                const auto& w = windows[i];
                CHECK(w.left_peak < w.dip_location);
                CHECK(w.dip_location < w.right_peak);
                CHECK(w.depth >= 0.0);
                CHECK(w.width > 0.0);
                CHECK(std::abs(w.asymmetry) <= 1.0);
                if (i > 0) CHECK(windows[i - 1].dip_location < w.dip_location);
            }
        }
    }
}

TEST_CASE("delay contrast vanishes without a Barnett shift") {
    const auto m = test::model_for("fig10");
    const SweepSpec spec{0.9 * m.omega_b, 1.1 * m.omega_b, 101, Method::Chain};
    for (const auto& row : tau_nonreciprocity(m, 0.0, spec, 1e-5 * m.omega_b).rows) {
        if (row.tau_NR_valid) CHECK(*row.tau_NR == 0.0);
    }
    CHECK(*contrast_ratio(2e-6, 2e-6) == 0.0);
}
