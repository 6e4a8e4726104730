#pragma once

#include "magmech/analysis.hpp"
#include "magmech/params.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace magmech {

/// Table-1 operating point: EffectiveParams mode with all five couplings on,
/// Delta_B = 0, plus the documented first-principles drive values.
RawParams table1_params();

enum class PresetKind { Spectrum, Delay, Nonreciprocity };

std::string_view to_string(PresetKind kind);

struct PresetSeries {
    std::string label;  // filename-safe tag of the varied parameter, empty for single runs
    RawParams params;
};

struct Preset {
    std::string name;
    std::string description;
    PresetKind kind = PresetKind::Spectrum;
    double delta_min_over_wb = 0.0;
    double delta_max_over_wb = 2.0;
    int n_points = 2001;
    Method method = Method::Chain;
    // |Delta_B| / omega_b for nonreciprocity presets.
    double abs_delta_B_over_wb = 0.0;
    std::vector<PresetSeries> series;

    SweepSpec sweep_for(const RawParams& params) const;
};

/// All presets, sorted by name.
const std::vector<Preset>& preset_registry();

std::vector<std::string> preset_names();

/// Throws UnknownPresetError listing the available names.
const Preset& find_preset(std::string_view name);

/// Parameters and sweep of the first series of a preset.
std::pair<RawParams, SweepSpec> resolve_preset(std::string_view name);

}  // namespace magmech
