#include "magmech/params.hpp"

#include "magmech/errors.hpp"

#include <cmath>
#include <numbers>

namespace magmech {

std::string_view to_string(ParamMode mode) {
    return mode == ParamMode::EffectiveParams ? "effective" : "first_principles";
}

namespace {

void require_positive(double value, const char* key) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ConfigError(key, "must be positive and finite");
    }
}

void require_nonnegative(double value, const char* key) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw ConfigError(key, "must be non-negative and finite");
    }
}

void require_finite(double value, const char* key) {
    if (!std::isfinite(value)) {
        throw ConfigError(key, "must be finite");
    }
}

void require_present(const std::optional<double>& value, const char* key, const char* mode) {
    if (!value) {
        throw ConfigError(key, std::string("required in ") + mode + " mode");
    }
}

}  // namespace

void validate(const RawParams& p) {
    require_positive(p.omega_a, "omega_a_hz");
    require_positive(p.omega_L, "omega_L_hz");
    require_positive(p.omega_b1, "omega_b1_hz");
    require_positive(p.omega_b2, "omega_b2_hz");
    require_positive(p.omega_b3, "omega_b3_hz");

    require_finite(p.Delta_a, "delta_a_hz");
    require_finite(p.Delta_m1, "delta_m1_hz");
    require_finite(p.Delta_m2, "delta_m2_hz");

    require_positive(p.kappa_a, "kappa_a_hz");
    require_positive(p.kappa_m1, "kappa_m1_hz");
    require_positive(p.kappa_m2, "kappa_m2_hz");
    require_positive(p.gamma_1, "gamma_1_hz");
    require_positive(p.gamma_2, "gamma_2_hz");
    require_positive(p.gamma_3, "gamma_3_hz");

    require_nonnegative(p.g_1, "g_1_hz");
    require_nonnegative(p.g_2, "g_2_hz");
    require_finite(p.Delta_B, "delta_B_over_wb");
    if (p.omega_b_norm) {
        require_positive(*p.omega_b_norm, "omega_b_norm_hz");
    }

    if (p.mode == ParamMode::EffectiveParams) {
        require_present(p.G_1, "G_1_hz", "effective");
        require_present(p.G_2, "G_2_hz", "effective");
        require_present(p.G_a, "G_a_hz", "effective");
    } else {
        require_present(p.G_01, "G_01_hz", "first_principles");
        require_present(p.G_02, "G_02_hz", "first_principles");
        require_present(p.g_a_bare, "g_a_hz", "first_principles");
        require_present(p.B_drive, "B_tesla", "first_principles");
        require_present(p.P_drive, "P_watt", "first_principles");
        require_present(p.sphere_diameter, "diameter_m", "first_principles");
    }

    if (p.G_1) require_nonnegative(*p.G_1, "G_1_hz");
    if (p.G_2) require_nonnegative(*p.G_2, "G_2_hz");
    if (p.G_a) require_nonnegative(*p.G_a, "G_a_hz");
    if (p.G_01) require_nonnegative(*p.G_01, "G_01_hz");
    if (p.G_02) require_nonnegative(*p.G_02, "G_02_hz");
    if (p.g_a_bare) require_nonnegative(*p.g_a_bare, "g_a_hz");
    if (p.B_drive) require_nonnegative(*p.B_drive, "B_tesla");
    if (p.P_drive) require_nonnegative(*p.P_drive, "P_watt");
    if (p.sphere_diameter) require_positive(*p.sphere_diameter, "diameter_m");

    require_nonnegative(p.kerr_coefficient, "kerr_K_hz");
    require_positive(p.kerr_threshold, "kerr_threshold");
    require_positive(p.constants.gyromagnetic_ratio, "constants.gyromagnetic_ratio_hz_per_tesla");
    require_positive(p.constants.spin_density, "constants.spin_density");
    require_positive(p.constants.spin_per_ion, "constants.spin_per_ion");
}

double spin_count(double diameter, const PhysicalConstants& constants) {
    if (!(diameter > 0.0)) {
        throw ConfigError("diameter_m", "sphere diameter must be positive");
    }
    const double radius = 0.5 * diameter;
    const double volume = 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
    return constants.spin_density * volume;
}

double rabi_frequency(double B, double N, const PhysicalConstants& constants) {
    if (!(N > 0.0)) {
        throw ConfigError("N_spins", "spin count must be positive");
    }
    if (!(B >= 0.0)) {
        throw ConfigError("B_tesla", "drive amplitude must be non-negative");
    }
    return std::sqrt(5.0) / 4.0 * constants.gyromagnetic_ratio * std::sqrt(N) * B;
}

double barnett_field(double Delta_B, const PhysicalConstants& constants) {
    return Delta_B / constants.gyromagnetic_ratio;
}

double barnett_shift(double H_B, const PhysicalConstants& constants) {
    return constants.gyromagnetic_ratio * H_B;
}

double probe_amplitude(double kappa_a, double power, double omega_p) {
    return std::sqrt(2.0 * kappa_a * power / (hbar * omega_p));
}

DerivedDrive derive_drive(const RawParams& params) {
    if (!params.sphere_diameter) {
        throw ConfigError("diameter_m", "required to derive the drive");
    }
    if (!params.B_drive) {
        throw ConfigError("B_tesla", "required to derive the drive");
    }
    DerivedDrive drive;
    drive.N_spins = spin_count(*params.sphere_diameter, params.constants);
    drive.Omega = rabi_frequency(*params.B_drive, drive.N_spins, params.constants);
    if (params.P_drive) {
        drive.epsilon_p = probe_amplitude(params.kappa_a, *params.P_drive, params.omega_L);
    }
    return drive;
}

KerrReport kerr_diagnostic(double K, double m_amplitude, double threshold) {
    if (!(threshold > 0.0)) {
        throw ConfigError("kerr_threshold", "must be positive");
    }
    if (!(K >= 0.0)) {
        throw ConfigError("kerr_K_hz", "must be non-negative");
    }
    if (!(m_amplitude >= 0.0)) {
        throw ConfigError("m_amplitude", "must be non-negative");
    }
    KerrReport report;
    report.nonlinear_scale = K * m_amplitude * m_amplitude * m_amplitude;
    report.ratio = report.nonlinear_scale / threshold;
    report.negligible = report.nonlinear_scale < threshold;
    return report;
}

}  // namespace magmech
