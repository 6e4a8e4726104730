#pragma once

#include "magmech/constants.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace magmech {

enum class ParamMode { EffectiveParams, FirstPrinciples };

std::string_view to_string(ParamMode mode);

/// Physical inputs of one configuration. Every frequency and rate is angular (rad/s).
///
/// In EffectiveParams mode the effective couplings G_1, G_2, G_a are used directly.
/// In FirstPrinciples mode they are derived from the steady state using the bare
/// couplings G_01, G_02, g_a_bare and the drive (B_drive, sphere_diameter).
/// Both sets may be present; the mode decides which one feeds the linearized model.
struct RawParams {
    ParamMode mode = ParamMode::EffectiveParams;

    double omega_a = 0.0;
    double omega_L = 0.0;
    double omega_b1 = 0.0;
    double omega_b2 = 0.0;
    double omega_b3 = 0.0;

    // Bare detunings from the drive frequency (mode frequency minus omega_L).
    double Delta_a = 0.0;
    double Delta_m1 = 0.0;
    double Delta_m2 = 0.0;

    double kappa_a = 0.0;
    double kappa_m1 = 0.0;
    double kappa_m2 = 0.0;
    double gamma_1 = 0.0;
    double gamma_2 = 0.0;
    double gamma_3 = 0.0;

    double g_1 = 0.0;
    double g_2 = 0.0;

    std::optional<double> G_1;
    std::optional<double> G_2;
    std::optional<double> G_a;

    std::optional<double> G_01;
    std::optional<double> G_02;
    std::optional<double> g_a_bare;
    std::optional<double> B_drive;          // T
    std::optional<double> P_drive;          // W
    std::optional<double> sphere_diameter;  // m

    double Delta_B = 0.0;  // signed Barnett shift on magnon m1

    // Normalizer for the detuning axis; defaults to omega_b1 when unset.
    std::optional<double> omega_b_norm;

    // Static-displacement detuning shifts. Unset means on in FirstPrinciples mode and
    // off in EffectiveParams mode, where the table values already are the effective ones.
    std::optional<bool> static_shifts;

    double kerr_coefficient = two_pi * 6.4e-9;  // rad/s
    double kerr_threshold = 2.23e14;            // rad/s

    PhysicalConstants constants;

    double omega_b() const { return omega_b_norm.value_or(omega_b1); }

    bool uses_static_shifts() const {
        return static_shifts.value_or(mode == ParamMode::FirstPrinciples);
    }
};

/// Throws ConfigError naming the first key that breaks an invariant.
void validate(const RawParams& params);

struct DerivedDrive {
    double N_spins = 0.0;
    double Omega = 0.0;      // rad/s
    double epsilon_p = 0.0;  // probe amplitude; normalized outputs do not depend on it
};

double spin_count(double diameter, const PhysicalConstants& constants = {});

double rabi_frequency(double B, double N, const PhysicalConstants& constants = {});

/// Effective Barnett field H_B = Delta_B / gamma.
double barnett_field(double Delta_B, const PhysicalConstants& constants = {});

/// Inverse of barnett_field.
double barnett_shift(double H_B, const PhysicalConstants& constants = {});

/// Probe amplitude sqrt(2 kappa_a P / (hbar omega_p)).
double probe_amplitude(double kappa_a, double power, double omega_p);

/// Requires B_drive and sphere_diameter. P_drive is optional (epsilon_p = 0 without it).
DerivedDrive derive_drive(const RawParams& params);

struct KerrReport {
    double nonlinear_scale = 0.0;  // K |m|^3
    double ratio = 0.0;            // nonlinear_scale / threshold
    bool negligible = true;
};

KerrReport kerr_diagnostic(double K, double m_amplitude, double threshold);

}  // namespace magmech
