#include "magmech/config.hpp"
#include "magmech/errors.hpp"
#include "magmech/presets.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace magmech;
using Catch::Matchers::WithinRel;

namespace {

const char* kMinimal = R"(
# operating point
omega_a_hz = 1e10
omega_L_hz = 1e10
omega_b1_hz = 1e7
omega_b2_hz = 1e7
omega_b3_hz = 1e7
delta_a_hz = 1e7
delta_m1_hz = 1e7
delta_m2_hz = 1e7
kappa_a_hz = 1e6
kappa_m1_hz = 1e5
kappa_m2_hz = 1e5
gamma_1_hz = 100
gamma_2_hz = 100
gamma_3_hz = 100
g_1_hz = 1.5e6   # photon-magnon
g_2_hz = 1.5e6
G_1_hz = 1.5e6
G_2_hz = 3.5e6
G_a_hz = "2.5e6"
delta_B_over_wb = -0.5

[steady_state]
tol = 1e-11
)";

void check_same(const RawParams& a, const RawParams& b) {
    auto close = [](double x, double y) {
        return x == y || std::abs(x - y) <= 4e-16 * std::max(std::abs(x), std::abs(y));
    };
    CHECK(a.mode == b.mode);
    for (auto [x, y] : {std::pair{a.omega_a, b.omega_a}, {a.omega_L, b.omega_L},
                        {a.omega_b1, b.omega_b1}, {a.omega_b2, b.omega_b2},
                        {a.omega_b3, b.omega_b3}, {a.Delta_a, b.Delta_a},
                        {a.Delta_m1, b.Delta_m1}, {a.Delta_m2, b.Delta_m2},
                        {a.kappa_a, b.kappa_a}, {a.kappa_m1, b.kappa_m1},
                        {a.kappa_m2, b.kappa_m2}, {a.gamma_1, b.gamma_1},
                        {a.gamma_2, b.gamma_2}, {a.gamma_3, b.gamma_3}, {a.g_1, b.g_1},
                        {a.g_2, b.g_2}, {a.Delta_B, b.Delta_B},
                        {a.kerr_coefficient, b.kerr_coefficient},
                        {a.kerr_threshold, b.kerr_threshold}}) {
        CHECK(close(x, y));
    }
    for (auto [x, y] : {std::pair{a.G_1, b.G_1}, {a.G_2, b.G_2}, {a.G_a, b.G_a},
                        {a.G_01, b.G_01}, {a.G_02, b.G_02}, {a.g_a_bare, b.g_a_bare},
                        {a.B_drive, b.B_drive}, {a.P_drive, b.P_drive},
                        {a.sphere_diameter, b.sphere_diameter}}) {
        REQUIRE(x.has_value() == y.has_value());
        if (x) CHECK(close(*x, *y));
    }
    CHECK(a.static_shifts == b.static_shifts);
}

}  // namespace

TEST_CASE("parse sections, comments and quotes") {
    const auto doc = ConfigDocument::parse(kMinimal);
    CHECK(doc.get_double("steady_state.tol") == 1e-11);
    CHECK(doc.get_double("g_1_hz") == 1.5e6);
    CHECK(doc.get_string("G_a_hz") == "2.5e6");
    CHECK_FALSE(doc.contains("operating"));
}

TEST_CASE("hz keys become angular frequencies") {
    const auto p = params_from_document(ConfigDocument::parse(kMinimal));
    CHECK_THAT(p.kappa_a, WithinRel(2.0 * M_PI * 1e6, 1e-15));
    CHECK_THAT(*p.G_a, WithinRel(2.0 * M_PI * 2.5e6, 1e-15));
    CHECK(p.mode == ParamMode::EffectiveParams);
    CHECK_THAT(p.Delta_B, WithinRel(-0.5 * p.omega_b1, 1e-15));
}

TEST_CASE("config errors name the key") {
    auto key_of = [](const std::string& text) -> std::string {
        try {
            params_from_document(ConfigDocument::parse(text));
        } catch (const ConfigError& e) {
            return e.key();
        }
        return "";
    };
    const std::string base = kMinimal;
    CHECK(key_of("kappa_x_hz = 1\n" + base) == "kappa_x_hz");
    CHECK(key_of(std::string(kMinimal).replace(base.find("kappa_a_hz = 1e6"), 16, "kappa_a_hz = -1")) ==
          "kappa_a_hz");
    CHECK(key_of(std::string(kMinimal).replace(base.find("g_2_hz = 1.5e6"), 14, "g_2_hz = fast")) ==
          "g_2_hz");
    CHECK(key_of("mode = quantum\n" + base) == "mode");
    CHECK(key_of(std::string(kMinimal).replace(base.find("delta_a_hz = 1e7"), 16, "")) ==
          "delta_a_hz");
}

TEST_CASE("duplicate keys and malformed lines are rejected") {
    CHECK_THROWS_AS(ConfigDocument::parse("a = 1\na = 2\n"), ConfigError);
    CHECK_THROWS_AS(ConfigDocument::parse("just words\n"), ConfigError);
    CHECK_THROWS_AS(ConfigDocument::parse("[broken\n"), ConfigError);
}

TEST_CASE("written configs read back to the same parameters") {
    for (const auto& preset : preset_registry()) {
        for (const auto& series : preset.series) {
            const auto text = write_config(series.params);
            const auto back = params_from_document(ConfigDocument::parse(text));
            INFO(preset.name << " " << series.label);
            check_same(series.params, back);
        }
    }
}

TEST_CASE("first-principles round trip keeps drive inputs") {
    auto p = table1_params();
    p.mode = ParamMode::FirstPrinciples;
    p.static_shifts = true;
    const auto back = params_from_document(ConfigDocument::parse(write_config(p)));
    check_same(p, back);
}

TEST_CASE("load_validate_config reads a file") {
    const auto path = std::filesystem::temp_directory_path() / "magmech_test_config.toml";
    {
        std::ofstream f(path);
        f << kMinimal;
    }
    const auto p = load_validate_config(path);
    CHECK_THAT(p.g_1, WithinRel(2.0 * M_PI * 1.5e6, 1e-15));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_validate_config(path), ConfigError);
}
