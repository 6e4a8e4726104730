#pragma once

#include "magmech/steady_state.hpp"

#include <complex>
#include <optional>

namespace magmech {

/// Intermediate quantities of the closed-form probe response at one detuning.
struct ChainCoefficients {
    cdouble h1, h2, h3, h4, h5, h6, h7, h8, h9;
    cdouble A, B, E, F, G, K, L, M;
    cdouble X1, X2, X3, X4, X5, X6, X7, X8;
    cdouble Z1, Z2, Z3, Z4;
};

/// Throws PoleError if any denominator is exactly zero.
ChainCoefficients chain_coefficients(const LinearizedModel& model, double delta);

/// a_- / epsilon_p from the closed-form chain (units of s).
cdouble probe_sideband_amplitude(const LinearizedModel& model, double delta);

/// Outer inverse of the chain given precomputed coefficients.
cdouble probe_sideband_amplitude(const LinearizedModel& model, const ChainCoefficients& c,
                                 double delta);

struct ProbePoint {
    double delta = 0.0;  // omega_p - omega_L, rad/s
    cdouble a_minus;     // a_- / epsilon_p
    cdouble eps_out;
    double eps_R = 0.0;  // absorption
    double eps_I = 0.0;  // dispersion
    cdouble T;           // normalized transmission
    double phase = 0.0;  // principal arg(T), unwrapped at sweep level
    std::optional<double> tau;
};

/// Builds the output-field quantities from a known a_-/epsilon_p.
ProbePoint probe_point_from_amplitude(const LinearizedModel& model, double delta, cdouble a_minus);

ProbePoint output_field(const LinearizedModel& model, double delta);

/// Reduces a phase difference into (-pi, pi].
double wrap_phase_difference(double dphi);

struct GroupDelayOptions {
    int max_halvings = 10;
    double max_phase_jump = 1.5707963267948966;  // pi/2
};

/// Group delay d(arg T)/d(omega_p) in seconds by a centred difference with
/// step `step` (rad/s). The step is halved while the stencil phase jump exceeds
/// the guard; throws SolverError if it never settles.
double group_delay(const LinearizedModel& model, double delta, double step,
                   const GroupDelayOptions& options = {});

/// Group delay using an arbitrary transmission evaluator (chain or oracle).
template <typename TransmissionFn>
double group_delay_with(TransmissionFn&& transmission, double delta, double step,
                        const GroupDelayOptions& options = {});

}  // namespace magmech

#include "magmech/detail/group_delay.ipp"
