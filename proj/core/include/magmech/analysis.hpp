#pragma once

#include "magmech/oracle.hpp"
#include "magmech/response.hpp"

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace magmech {

enum class Method { Chain, Oracle, Both };

std::string_view to_string(Method method);
Method method_from_string(std::string_view name);

struct SweepSpec {
    double delta_min = 0.0;  // rad/s
    double delta_max = 0.0;  // rad/s
    int n_points = 2001;
    Method method = Method::Chain;
};

void validate(const SweepSpec& spec);

/// Uniform grid delta_min + i (delta_max - delta_min) / (n - 1).
std::vector<double> sweep_grid(const SweepSpec& spec);

struct SpectrumRow {
    ProbePoint point;
    bool pole = false;  // evaluation failed at this point; numeric fields are NaN
};

struct SpectrumTable {
    Method method = Method::Chain;
    double omega_b = 0.0;
    std::vector<SpectrumRow> rows;

    std::size_t pole_count() const;
};

/// One table per evaluator (two for Method::Both). Phases are unwrapped left to
/// right and tau comes from a centred difference on the grid (one-sided at the ends).
std::vector<SpectrumTable> sweep_spectrum(const LinearizedModel& model, const SweepSpec& spec);

SpectrumTable sweep_spectrum(const LinearizedModel& model, const SweepSpec& spec, Method method);

struct Window {
    double dip_location = 0.0;  // refined, rad/s
    double dip_value = 0.0;
    double left_peak = 0.0;     // rad/s
    double right_peak = 0.0;
    double depth = 0.0;
    double width = 0.0;         // rad/s between half-depth crossings
    double asymmetry = 0.0;
    double prominence = 0.0;
    std::size_t dip_index = 0;
    std::size_t left_index = 0;
    std::size_t right_index = 0;
};

/// Local minima of eps_R whose topographic prominence is at least
/// `prominence * max(eps_R)`. Ordered by dip location.
std::vector<Window> find_windows(const SpectrumTable& table, double prominence = 0.01);

/// (eps_R(left peak) - eps_R(right peak)) / (sum of both).
double fano_asymmetry(const Window& window, const SpectrumTable& table);

struct NonreciprocityRow {
    double delta = 0.0;
    double eps_R_neg = 0.0;
    double eps_R_pos = 0.0;
    double eps_NR = 0.0;
    bool eps_flagged = false;  // denominator below guard, eps_NR forced to 0
    std::optional<double> tau_neg;
    std::optional<double> tau_pos;
    std::optional<double> tau_NR;
    bool tau_NR_valid = false;
};

struct NonreciprocityReport {
    double abs_Delta_B = 0.0;
    double omega_b = 0.0;
    std::vector<NonreciprocityRow> rows;
};

inline constexpr double kContrastGuard = 1e-12;

/// Contrast between eps_R at Delta_B = -|Delta_B| and +|Delta_B|. Fills the eps fields.
NonreciprocityReport eps_nonreciprocity(const LinearizedModel& model_template, double abs_Delta_B,
                                        const SweepSpec& spec);

/// Contrast of the group delays. fd_step is the stencil step in rad/s.
/// Fills the tau fields of `report` (created when null).
NonreciprocityReport tau_nonreciprocity(const LinearizedModel& model_template, double abs_Delta_B,
                                        const SweepSpec& spec, double fd_step);

/// Both contrasts on the same grid.
NonreciprocityReport nonreciprocity(const LinearizedModel& model_template, double abs_Delta_B,
                                    const SweepSpec& spec, double fd_step);

/// |a - b| / (a + b), or nullopt when a + b <= guard.
std::optional<double> contrast_ratio(double a, double b, double guard = kContrastGuard);

enum class ContrastKind { Absorption, Delay };

/// Contiguous runs where the chosen contrast is >= threshold, as [start, end] in rad/s.
/// Flagged/invalid points break runs.
std::vector<std::pair<double, double>> optimal_ranges(const NonreciprocityReport& report,
                                                      ContrastKind kind, double threshold = 0.99);

}  // namespace magmech
