#include "magmech/response.hpp"

#include "magmech/errors.hpp"

#include <cmath>
#include <numbers>

namespace magmech {

namespace {

constexpr cdouble I{0.0, 1.0};

class Divider {
public:
    explicit Divider(double delta) : delta_(delta) {}

    cdouble operator()(cdouble num, cdouble den, const char* name) const {
        if (den == cdouble{}) {
            throw PoleError(name, delta_);
        }
        return num / den;
    }

private:
    double delta_;
};

// Mechanical susceptibility denominator omega - (delta/omega)(delta + i gamma).
cdouble mechanical(double omega, double gamma, double delta) {
    return omega - delta / omega * (delta + I * gamma);
}

}  // namespace

ChainCoefficients chain_coefficients(const LinearizedModel& m, double delta) {
    const Divider div(delta);
    ChainCoefficients c;

    c.h1 = m.kappa_a + I * (m.Delta_a_eff - delta);
    c.h2 = m.kappa_m1 + I * (m.Delta_m1_eff - delta);
    c.h3 = mechanical(m.omega_b1, m.gamma_1, delta);
    c.h4 = m.kappa_m1 - I * (m.Delta_m1_eff + delta);
    c.h5 = m.kappa_a - I * (m.Delta_a_eff + delta);
    c.h6 = m.kappa_m2 - I * (m.Delta_m2_eff + delta);
    c.h7 = mechanical(m.omega_b2, m.gamma_2, delta);
    c.h8 = m.kappa_m2 + I * (m.Delta_m2_eff - delta);
    c.h9 = mechanical(m.omega_b3, m.gamma_3, delta);

    const double g1s = m.g_1 * m.g_1;
    const double g2s = m.g_2 * m.g_2;
    const double G11s = m.G_11 * m.G_11;
    const double G22s = m.G_22 * m.G_22;
    const double Gaas = m.G_aa * m.G_aa;

    // Photon-phonon term shared by E, F, X3, X4.
    const cdouble optomech = div(Gaas, I * c.h5 * c.h9, "h5*h9");

    c.A = 1.0 + div(G22s, I * c.h7 * c.h8, "A");
    c.B = 1.0 - div(G22s, I * c.h6 * c.h7 * c.A, "B");
    c.E = 1.0 + div(g2s, c.h5 * c.h6 * c.B, "E") - optomech;
    c.F = div(I * g2s * G22s, c.h5 * c.h6 * c.h7 * c.h8 * c.A * c.B, "F") - optomech;
    c.G = 1.0 + div(g1s, c.h4 * c.h5 * c.E, "G");
    c.K = 1.0 - div(G11s, I * c.h3 * c.h4 * c.G, "K");
    c.L = 1.0 + div(G11s, I * c.h2 * c.h3 * c.K, "L");
    c.M = div(-I * m.g_1, c.h2, "M") +
          div(m.g_1 * G11s * c.F, c.h2 * c.h3 * c.h4 * c.E * c.G * c.K, "M");

    c.X1 = 1.0 + div(G11s, I * c.h2 * c.h3, "X1");
    c.X2 = 1.0 - div(G11s, I * c.h3 * c.h4 * c.X1, "X2");
    c.X3 = 1.0 + div(g1s, c.h4 * c.h5 * c.X2, "X3") - optomech;
    c.X4 = div(I * g1s * G11s, c.h2 * c.h3 * c.h4 * c.h5 * c.X1 * c.X2, "X4") - optomech;
    c.X5 = 1.0 + div(g2s, c.h5 * c.h6 * c.X3, "X5");
    c.X6 = 1.0 - div(G22s, I * c.h6 * c.h7 * c.X5, "X6");
    c.X7 = 1.0 + div(G22s, I * c.h7 * c.h8 * c.X6, "X7");
    c.X8 = div(-I * m.g_2, c.h8, "X8") +
           div(m.g_2 * G22s * c.X4, c.h6 * c.h7 * c.h8 * c.X3 * c.X5 * c.X6, "X8");

    c.Z1 = 1.0 + div(g1s, c.h4 * c.h5 * c.X2, "Z1") + div(g2s, c.h5 * c.h6 * c.B, "Z1");
    c.Z2 = div(I * g1s * G11s, c.h2 * c.h3 * c.h4 * c.h5 * c.X1 * c.X2, "Z2") +
           div(I * g2s * G22s, c.h5 * c.h6 * c.h7 * c.h8 * c.A * c.B, "Z2");
    c.Z3 = 1.0 - div(Gaas, I * c.h5 * c.h9 * c.Z1, "Z3");
    c.Z4 = div(-m.G_aa, I * c.h9, "Z4") + div(m.G_aa * c.Z2, I * c.h9 * c.Z1, "Z4");
    return c;
}

cdouble probe_sideband_amplitude(const LinearizedModel& m, const ChainCoefficients& c, double delta) {
    const Divider div(delta);
    const cdouble denominator = c.h1 + div(I * m.g_1 * c.M, c.L, "L") +
                                div(I * m.g_2 * c.X8, c.X7, "X7") -
                                div(m.G_aa * c.Z4, c.Z3, "Z3");
    return div(1.0, denominator, "probe response denominator");
}

cdouble probe_sideband_amplitude(const LinearizedModel& model, double delta) {
    return probe_sideband_amplitude(model, chain_coefficients(model, delta), delta);
}

ProbePoint probe_point_from_amplitude(const LinearizedModel& model, double delta, cdouble a_minus) {
    ProbePoint p;
    p.delta = delta;
    p.a_minus = a_minus;
    p.eps_out = 2.0 * model.kappa_a * a_minus;
    p.eps_R = p.eps_out.real();
    p.eps_I = p.eps_out.imag();
    p.T = 1.0 - p.eps_out;
    p.phase = std::arg(p.T);
    return p;
}

ProbePoint output_field(const LinearizedModel& model, double delta) {
    return probe_point_from_amplitude(model, delta, probe_sideband_amplitude(model, delta));
}

double wrap_phase_difference(double dphi) {
    constexpr double pi = std::numbers::pi;
    double r = std::remainder(dphi, 2.0 * pi);  // in [-pi, pi]
    if (r <= -pi) r += 2.0 * pi;
    return r;
}

double group_delay(const LinearizedModel& model, double delta, double step,
                   const GroupDelayOptions& options) {
    return group_delay_with(
        [&](double d) { return 1.0 - 2.0 * model.kappa_a * probe_sideband_amplitude(model, d); },
        delta, step, options);
}

}  // namespace magmech
