#include "magmech/presets.hpp"

#include "magmech/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace magmech {

namespace {

constexpr double MHz = two_pi * 1e6;

std::string mhz_label(const char* name, double value_mhz) {
    std::ostringstream out;
    out << name << '_' << value_mhz << "MHz";
    std::string s = out.str();
    std::replace(s.begin(), s.end(), '.', 'p');
    return s;
}

std::string db_label(double over_wb) {
    std::ostringstream out;
    out << "dB_" << (over_wb < 0 ? "m" : (over_wb > 0 ? "p" : "")) << std::abs(over_wb) << "wb";
    std::string s = out.str();
    std::replace(s.begin(), s.end(), '.', 'p');
    return s;
}

struct Couplings {
    double g1, g2, G1, G2, Ga;  // MHz (ordinary frequency)
};

RawParams with_couplings(const Couplings& c, double delta_B_over_wb = 0.0) {
    RawParams p = table1_params();
    p.g_1 = c.g1 * MHz;
    p.g_2 = c.g2 * MHz;
    p.G_1 = c.G1 * MHz;
    p.G_2 = c.G2 * MHz;
    p.G_a = c.Ga * MHz;
    p.Delta_B = delta_B_over_wb * p.omega_b();
    return p;
}

constexpr Couplings kFull{1.5, 1.5, 1.5, 3.5, 2.5};

// Coupling ladder switched on one channel at a time.
constexpr Couplings kLadder[6] = {
    {0.0, 0.0, 0.0, 0.0, 0.0},
    {1.5, 0.0, 0.0, 0.0, 0.0},
    {1.5, 0.0, 1.5, 0.0, 0.0},
    {1.5, 1.5, 1.5, 0.0, 0.0},
    {1.5, 1.5, 1.5, 3.5, 0.0},
    {1.5, 1.5, 1.5, 3.5, 2.5},
};

std::string describe(const Couplings& c) {
    std::ostringstream out;
    out << "g1=" << c.g1 << " g2=" << c.g2 << " G1=" << c.G1 << " G2=" << c.G2 << " Ga=" << c.Ga
        << " MHz";
    return out.str();
}

Preset single(std::string name, std::string description, PresetKind kind, RawParams params) {
    Preset p;
    p.name = std::move(name);
    p.description = std::move(description);
    p.kind = kind;
    p.series.push_back({"", std::move(params)});
    return p;
}

Preset coupling_scan(std::string name, std::string description, Couplings base,
                     double Couplings::*member, const char* label, std::vector<double> values) {
    Preset p;
    p.name = std::move(name);
    p.description = std::move(description);
    p.kind = PresetKind::Spectrum;
    for (const double v : values) {
        Couplings c = base;
        c.*member = v;
        p.series.push_back({mhz_label(label, v), with_couplings(c)});
    }
    return p;
}

Preset decay_scan(std::string name, std::string description, double RawParams::*member,
                  const char* label, std::vector<double> values_mhz) {
    Preset p;
    p.name = std::move(name);
    p.description = std::move(description);
    p.kind = PresetKind::Spectrum;
    const Couplings c{1.5, 1.5, 1.5, 3.5, 3.0};
    for (const double v : values_mhz) {
        RawParams params = with_couplings(c);
        params.*member = v * MHz;
        p.series.push_back({mhz_label(label, v), params});
    }
    return p;
}

Preset delay_vs_Ga(std::string name, double delta_B_over_wb) {
    Preset p;
    p.name = std::move(name);
    std::ostringstream d;
    d << "Group delay vs delta for G_a in {0, 1, 2, 2.5} MHz at Delta_B = " << delta_B_over_wb
      << " omega_b; g1=g2=G1=1.5 G2=3.5 MHz";
    p.description = d.str();
    p.kind = PresetKind::Delay;
    for (const double ga : {0.0, 1.0, 2.0, 2.5}) {
        Couplings c = kFull;
        c.Ga = ga;
        p.series.push_back({mhz_label("Ga", ga), with_couplings(c, delta_B_over_wb)});
    }
    return p;
}

Preset nonreciprocal(std::string name, std::string description, Couplings c) {
    Preset p = single(std::move(name), std::move(description), PresetKind::Nonreciprocity,
                      with_couplings(c));
    p.abs_delta_B_over_wb = 0.5;
    return p;
}

std::vector<Preset> build_registry() {
    std::vector<Preset> presets;
    const char letters[] = "abcdef";

    for (int i = 0; i < 6; ++i) {
        const auto& c = kLadder[i];
        presets.push_back(single(std::string("fig2") + letters[i],
                                 "Absorption eps_R vs delta, Delta_B = 0; " + describe(c),
                                 PresetKind::Spectrum, with_couplings(c)));
        presets.push_back(single(std::string("fig3") + letters[i],
                                 "Dispersion eps_I vs delta, Delta_B = 0; " + describe(c),
                                 PresetKind::Spectrum, with_couplings(c)));
    }

    presets.push_back(coupling_scan("fig4a", "eps_R while varying G1; g1=g2=1.5 G2=3.5 Ga=2.5 MHz",
                                    kFull, &Couplings::G1, "G1", {1.0, 1.5, 2.0, 2.5}));
    {
        const Couplings caption{1.5, 1.5, 1.5, 3.5, 3.0};
        const Couplings text{1.5, 1.5, 1.5, 3.5, 2.5};
        presets.push_back(coupling_scan("fig4b", "eps_R while varying G2; g1=g2=G1=1.5 Ga=3 MHz",
                                        caption, &Couplings::G2, "G2", {3.0, 3.5, 4.0}));
        presets.push_back(coupling_scan("fig4b_caption",
                                        "eps_R while varying G2; g1=g2=G1=1.5 Ga=3 MHz (caption)",
                                        caption, &Couplings::G2, "G2", {3.0, 3.5, 4.0}));
        presets.push_back(coupling_scan("fig4b_text",
                                        "eps_R while varying G2; g1=g2=G1=1.5 Ga=2.5 MHz (body text)",
                                        text, &Couplings::G2, "G2", {3.0, 3.5, 4.0}));
    }
    presets.push_back(coupling_scan("fig4c", "eps_R while varying g1; g2=G1=1.5 G2=3.5 Ga=2.5 MHz",
                                    kFull, &Couplings::g1, "g1", {0.5, 1.0, 1.5, 2.0}));
    presets.push_back(coupling_scan("fig4d", "eps_R while varying g2; g1=G1=1.5 G2=3.5 Ga=2.5 MHz",
                                    kFull, &Couplings::g2, "g2", {0.5, 1.0, 1.5, 2.0}));
    presets.push_back(coupling_scan("fig4e", "eps_R while varying Ga; g1=g2=G1=1.5 G2=3.5 MHz",
                                    kFull, &Couplings::Ga, "Ga", {1.0, 2.0, 3.0, 4.0}));

    presets.push_back(decay_scan("fig5a", "eps_R while varying kappa_a; g1=g2=G1=1.5 G2=3.5 Ga=3 MHz",
                                 &RawParams::kappa_a, "kappa_a", {0.5, 1.0, 2.0}));
    presets.push_back(decay_scan("fig5b", "eps_R while varying kappa_m1; g1=g2=G1=1.5 G2=3.5 Ga=3 MHz",
                                 &RawParams::kappa_m1, "kappa_m1", {0.05, 0.1, 0.2}));
    presets.push_back(decay_scan("fig5c", "eps_R while varying kappa_m2; g1=g2=G1=1.5 G2=3.5 Ga=3 MHz",
                                 &RawParams::kappa_m2, "kappa_m2", {0.05, 0.1, 0.2}));

    presets.push_back(delay_vs_Ga("fig7a", 0.0));
    presets.push_back(delay_vs_Ga("fig7b", -0.5));
    presets.push_back(delay_vs_Ga("fig7c", 0.5));

    {
        Preset p;
        p.name = "fig8";
        p.description = "Group delay vs delta for Delta_B in {-0.5, 0, 0.5} omega_b; " + describe(kFull);
        p.kind = PresetKind::Delay;
        for (const double db : {-0.5, 0.0, 0.5}) {
            p.series.push_back({db_label(db), with_couplings(kFull, db)});
        }
        presets.push_back(std::move(p));
    }

    presets.push_back(nonreciprocal("fig9a", "Nonreciprocal absorption, |Delta_B| = 0.5 omega_b; " +
                                                  describe(kLadder[1]),
                                    kLadder[1]));
    presets.push_back(nonreciprocal("fig9b", "Nonreciprocal absorption, |Delta_B| = 0.5 omega_b; " +
                                                  describe(kLadder[2]),
                                    kLadder[2]));
    presets.push_back(nonreciprocal("fig9c", "Nonreciprocal absorption, |Delta_B| = 0.5 omega_b; " +
                                                  describe(kLadder[3]),
                                    kLadder[3]));
    presets.push_back(nonreciprocal("fig10",
                                    "Nonreciprocal group delay, |Delta_B| = 0.5 omega_b; " +
                                        describe({1.5, 1.5, 1.5, 3.5, 1.0}),
                                    {1.5, 1.5, 1.5, 3.5, 1.0}));

    presets.push_back(single("table1", "Table-1 operating point, all couplings on, Delta_B = 0; " +
                                           describe(kFull),
                             PresetKind::Spectrum, table1_params()));

    std::sort(presets.begin(), presets.end(),
              [](const Preset& a, const Preset& b) { return a.name < b.name; });
    return presets;
}

}  // namespace

RawParams table1_params() {
    RawParams p;
    p.mode = ParamMode::EffectiveParams;
    p.omega_a = two_pi * 1e10;
    p.omega_L = two_pi * 1e10;
    p.omega_b1 = p.omega_b2 = p.omega_b3 = two_pi * 1e7;
    p.Delta_a = p.Delta_m1 = p.Delta_m2 = two_pi * 1e7;
    p.kappa_a = two_pi * 1e6;
    p.kappa_m1 = p.kappa_m2 = two_pi * 0.1e6;
    p.gamma_1 = p.gamma_2 = p.gamma_3 = two_pi * 1e2;
    p.g_1 = p.g_2 = two_pi * 1.5e6;
    p.G_1 = two_pi * 1.5e6;
    p.G_2 = two_pi * 3.5e6;
    p.G_a = two_pi * 2.5e6;
    p.G_01 = p.G_02 = two_pi * 0.2;
    p.g_a_bare = two_pi * 0.2;
    p.B_drive = 3.6e-5;
    p.P_drive = 7.6e-3;
    p.sphere_diameter = 250e-6;
    return p;
}

std::string_view to_string(PresetKind kind) {
    switch (kind) {
        case PresetKind::Spectrum: return "spectrum";
        case PresetKind::Delay: return "delay";
        case PresetKind::Nonreciprocity: return "nonreciprocity";
    }
    return "spectrum";
}

SweepSpec Preset::sweep_for(const RawParams& params) const {
    SweepSpec spec;
    spec.delta_min = delta_min_over_wb * params.omega_b();
    spec.delta_max = delta_max_over_wb * params.omega_b();
    spec.n_points = n_points;
    spec.method = method;
    return spec;
}

const std::vector<Preset>& preset_registry() {
    static const std::vector<Preset> registry = build_registry();
    return registry;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& p : preset_registry()) names.push_back(p.name);
    return names;
}

const Preset& find_preset(std::string_view name) {
    const auto& registry = preset_registry();
    const auto it = std::find_if(registry.begin(), registry.end(),
                                 [&](const Preset& p) { return p.name == name; });
    if (it == registry.end()) {
        std::string message = "unknown preset '" + std::string(name) + "'; available:";
        for (const auto& p : registry) message += " " + p.name;
        throw UnknownPresetError(message);
    }
    return *it;
}

std::pair<RawParams, SweepSpec> resolve_preset(std::string_view name) {
    const Preset& preset = find_preset(name);
    const RawParams& params = preset.series.front().params;
    validate(params);
    return {params, preset.sweep_for(params)};
}

}  // namespace magmech
