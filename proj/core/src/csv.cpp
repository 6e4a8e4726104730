#include "magmech/csv.hpp"

#include "magmech/constants.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <system_error>

namespace magmech {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[64];
    // Shortest representation that round-trips; never more than 17 significant digits.
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    if (ec != std::errc{}) {
        const auto fallback = std::to_chars(buffer, buffer + sizeof buffer, value,
                                            std::chars_format::general, 17);
        return std::string(buffer, fallback.ptr);
    }
    return std::string(buffer, ptr);
}

namespace {

std::string optional_number(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string{};
}

std::string hz(double omega) { return format_number(omega / two_pi); }

}  // namespace

std::vector<std::string> provenance_lines(const RawParams& p) {
    std::vector<std::string> lines;
    const auto add = [&](const std::string& key, const std::string& value) {
        lines.push_back(key + " = " + value);
    };
    add("mode", std::string(to_string(p.mode)));
    add("omega_a_hz", hz(p.omega_a));
    add("omega_L_hz", hz(p.omega_L));
    add("omega_b1_hz", hz(p.omega_b1));
    add("omega_b2_hz", hz(p.omega_b2));
    add("omega_b3_hz", hz(p.omega_b3));
    add("delta_a_hz", hz(p.Delta_a));
    add("delta_m1_hz", hz(p.Delta_m1));
    add("delta_m2_hz", hz(p.Delta_m2));
    add("kappa_a_hz", hz(p.kappa_a));
    add("kappa_m1_hz", hz(p.kappa_m1));
    add("kappa_m2_hz", hz(p.kappa_m2));
    add("gamma_1_hz", hz(p.gamma_1));
    add("gamma_2_hz", hz(p.gamma_2));
    add("gamma_3_hz", hz(p.gamma_3));
    add("g_1_hz", hz(p.g_1));
    add("g_2_hz", hz(p.g_2));
    if (p.G_1) add("G_1_hz", hz(*p.G_1));
    if (p.G_2) add("G_2_hz", hz(*p.G_2));
    if (p.G_a) add("G_a_hz", hz(*p.G_a));
    if (p.G_01) add("G_01_hz", hz(*p.G_01));
    if (p.G_02) add("G_02_hz", hz(*p.G_02));
    if (p.g_a_bare) add("g_a_hz", hz(*p.g_a_bare));
    if (p.B_drive) add("B_tesla", format_number(*p.B_drive));
    if (p.sphere_diameter) add("diameter_m", format_number(*p.sphere_diameter));
    add("delta_B_over_wb", format_number(p.Delta_B / p.omega_b()));
    add("static_shifts", p.uses_static_shifts() ? "true" : "false");
    return lines;
}

void write_comment_lines(std::ostream& out, const std::vector<std::string>& lines) {
    for (const auto& line : lines) out << "# " << line << '\n';
}

void write_spectrum_csv(std::ostream& out, const std::vector<SpectrumTable>& tables) {
    out << "delta_over_wb,eps_R,eps_I,T_re,T_im,T_abs,phase_rad,tau_s,method\n";
    for (const auto& table : tables) {
        const std::string method(to_string(table.method));
        for (const auto& row : table.rows) {
            const auto& p = row.point;
            out << format_number(p.delta / table.omega_b) << ',' << format_number(p.eps_R) << ','
                << format_number(p.eps_I) << ',' << format_number(p.T.real()) << ','
                << format_number(p.T.imag()) << ','
                << format_number(std::abs(p.T)) << ','
                << format_number(p.phase) << ',' << optional_number(p.tau) << ',' << method
                << '\n';
        }
    }
}

void write_nonreciprocity_csv(std::ostream& out, const NonreciprocityReport& report) {
    out << "delta_over_wb,eps_R_neg,eps_R_pos,eps_NR,tau_neg_s,tau_pos_s,tau_NR,tau_NR_valid\n";
    for (const auto& row : report.rows) {
        out << format_number(row.delta / report.omega_b) << ',' << format_number(row.eps_R_neg)
            << ',' << format_number(row.eps_R_pos) << ',' << format_number(row.eps_NR) << ','
            << optional_number(row.tau_neg) << ',' << optional_number(row.tau_pos) << ','
            << (row.tau_NR_valid ? optional_number(row.tau_NR) : std::string{}) << ','
            << (row.tau_NR_valid ? 1 : 0) << '\n';
    }
}

void write_windows_csv(std::ostream& out, const std::vector<Window>& windows, double omega_b) {
    out << "index,dip_delta_over_wb,dip_value,depth,width_over_wb,asymmetry\n";
    for (std::size_t i = 0; i < windows.size(); ++i) {
        const auto& w = windows[i];
        out << i << ',' << format_number(w.dip_location / omega_b) << ','
            << format_number(w.dip_value) << ',' << format_number(w.depth) << ','
            << format_number(w.width / omega_b) << ',' << format_number(w.asymmetry) << '\n';
    }
}

void write_validation_csv(std::ostream& out, const ValidationReport& report, double omega_b) {
    out << "delta_over_wb,rel_err\n";
    for (const auto& p : report.points) {
        out << format_number(p.delta / omega_b) << ',' << optional_number(p.rel_err) << '\n';
    }
    out << "# max_rel_err = " << format_number(report.max_rel_err)
        << ", argmax_delta_over_wb = " << format_number(report.argmax_delta / omega_b)
        << ", flagged = " << report.flagged << ", points = " << report.points.size() << '\n';
}

void write_delay_csv(std::ostream& out, const std::vector<DelayRow>& rows, double omega_b) {
    out << "delta_over_wb,phase_rad,tau_s\n";
    for (const auto& row : rows) {
        out << format_number(row.delta / omega_b) << ',' << format_number(row.phase) << ','
            << optional_number(row.tau) << '\n';
    }
}

void write_steady_state_csv(std::ostream& out, const SteadyState& s) {
    out << "a_s_re,a_s_im,m_1s_re,m_1s_im,m_2s_re,m_2s_im,q_1s,q_2s,q_3s,residual,iterations\n";
    out << format_number(s.a_s.real()) << ',' << format_number(s.a_s.imag()) << ','
        << format_number(s.m_1s.real()) << ',' << format_number(s.m_1s.imag()) << ','
        << format_number(s.m_2s.real()) << ',' << format_number(s.m_2s.imag()) << ','
        << format_number(s.q_1s) << ',' << format_number(s.q_2s) << ',' << format_number(s.q_3s)
        << ',' << format_number(s.residual) << ',' << s.iterations << '\n';
}

void write_steady_state_text(std::ostream& out, const SteadyState& s) {
    out << "# a_s = " << format_number(s.a_s.real()) << " + " << format_number(s.a_s.imag())
        << "i  |a_s| = " << format_number(std::abs(s.a_s)) << '\n'
        << "# m_1s = " << format_number(s.m_1s.real()) << " + " << format_number(s.m_1s.imag())
        << "i  |m_1s| = " << format_number(std::abs(s.m_1s)) << '\n'
        << "# m_2s = " << format_number(s.m_2s.real()) << " + " << format_number(s.m_2s.imag())
        << "i  |m_2s| = " << format_number(std::abs(s.m_2s)) << '\n'
        << "# q_1s = " << format_number(s.q_1s) << '\n'
        << "# q_2s = " << format_number(s.q_2s) << '\n'
        << "# q_3s = " << format_number(s.q_3s) << '\n'
        << "# residual = " << format_number(s.residual) << " after " << s.iterations
        << " iterations\n";
}

}  // namespace magmech
