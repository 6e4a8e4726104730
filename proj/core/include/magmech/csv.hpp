#pragma once

#include "magmech/analysis.hpp"
#include "magmech/params.hpp"
#include "magmech/steady_state.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace magmech {

/// Shortest round-trippable form with at most 17 significant digits; "nan" for NaN.
std::string format_number(double value);

/// '#'-prefixed provenance lines describing the resolved parameter set.
std::vector<std::string> provenance_lines(const RawParams& params);

void write_comment_lines(std::ostream& out, const std::vector<std::string>& lines);

/// delta_over_wb, eps_R, eps_I, T_re, T_im, T_abs, phase_rad, tau_s, method
void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumTable>& tables);

/// delta_over_wb, eps_R_neg, eps_R_pos, eps_NR, tau_neg_s, tau_pos_s, tau_NR, tau_NR_valid
void write_nonreciprocity_csv(std::ostream& out, const NonreciprocityReport& report);

/// index, dip_delta_over_wb, dip_value, depth, width_over_wb, asymmetry
void write_windows_csv(std::ostream& out, const std::vector<Window>& windows, double omega_b);

/// delta_over_wb, rel_err followed by a '#' summary line.
void write_validation_csv(std::ostream& out, const ValidationReport& report, double omega_b);

/// delta_over_wb, phase_rad, tau_s
struct DelayRow {
    double delta = 0.0;
    double phase = 0.0;
    std::optional<double> tau;
};
void write_delay_csv(std::ostream& out, const std::vector<DelayRow>& rows, double omega_b);

/// Header plus a single row of the steady-state fields.
void write_steady_state_csv(std::ostream& out, const SteadyState& state);

/// Human-readable `name = value` listing.
void write_steady_state_text(std::ostream& out, const SteadyState& state);

}  // namespace magmech
