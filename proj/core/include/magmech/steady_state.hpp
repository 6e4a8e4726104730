#pragma once

#include "magmech/params.hpp"

#include <complex>
#include <optional>

namespace magmech {

using cdouble = std::complex<double>;

/// Zeroth-order (probe-free) mean fields.
struct SteadyState {
    cdouble a_s;
    cdouble m_1s;
    cdouble m_2s;
    double q_1s = 0.0;
    double q_2s = 0.0;
    double q_3s = 0.0;
    double residual = 0.0;  // max relative change over the final iteration
    int iterations = 0;
};

struct SteadyStateOptions {
    double tol = 1e-12;
    int max_iter = 10000;
};

/// Effective detunings implied by a set of static displacements.
struct EffectiveDetunings {
    double Delta_a = 0.0;
    double Delta_m1 = 0.0;
    double Delta_m2 = 0.0;
};

EffectiveDetunings shifted_detunings(const RawParams& params, double q_1s, double q_2s, double q_3s);

/// Self-consistent fixed point of the mean-field equations.
///
/// Given the displacements, (a_s, m_1s, m_2s) solve a 3x3 complex linear system;
/// the displacements are then refreshed from |m_rs|^2 and |a_s|^2. Without static
/// shifts (RawParams::uses_static_shifts) the detunings stay at their bare values and
/// the iteration terminates after the displacements are evaluated once.
SteadyState solve_steady_state(const RawParams& params, const DerivedDrive& drive,
                               const SteadyStateOptions& options = {});

/// Largest relative mismatch between each field and the right-hand side of its
/// steady-state equation evaluated at the returned state.
double fixed_point_residual(const RawParams& params, const DerivedDrive& drive,
                            const SteadyState& state);

/// Everything the response evaluators consume. Rates and detunings in rad/s.
struct LinearizedModel {
    double kappa_a = 0.0;
    double kappa_m1 = 0.0;
    double kappa_m2 = 0.0;
    double gamma_1 = 0.0;
    double gamma_2 = 0.0;
    double gamma_3 = 0.0;
    double omega_b1 = 0.0;
    double omega_b2 = 0.0;
    double omega_b3 = 0.0;

    double Delta_a_eff = 0.0;
    double Delta_m1_eff = 0.0;  // includes the Barnett shift
    double Delta_m2_eff = 0.0;

    double g_1 = 0.0;
    double g_2 = 0.0;

    // Magnitudes G_r / sqrt(2) consumed by the response chain.
    double G_11 = 0.0;
    double G_22 = 0.0;
    double G_aa = 0.0;

    // Barnett shift already folded into Delta_m1_eff; kept so it can be swapped.
    double barnett_shift = 0.0;
    double omega_b = 0.0;  // normalizer of the detuning axis

    bool operator==(const LinearizedModel&) const = default;
};

LinearizedModel effective_model(const RawParams& params,
                                const std::optional<SteadyState>& steady = std::nullopt);

/// Same model with Delta_m1_eff re-centred on a different Barnett shift.
LinearizedModel with_barnett_shift(const LinearizedModel& model, double Delta_B);

/// Resolves the model for either mode, solving the steady state when required.
LinearizedModel build_model(const RawParams& params, const SteadyStateOptions& options = {});

}  // namespace magmech
