#include "magmech/oracle.hpp"

#include "magmech/errors.hpp"
#include "magmech/response.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace magmech {

namespace {

constexpr cdouble I{0.0, 1.0};
constexpr double kMaxCondition = 1e12;
constexpr double kMaxResidual = 1e-10;

}  // namespace

SidebandMatrix fluctuation_jacobian(const LinearizedModel& m, const OracleOptions& options) {
    SidebandMatrix J = SidebandMatrix::Zero();

    // Steady-state products G_0r m_rs and g_a a_s, carried as the real magnitudes
    // used by the chain (one common phase for all three).
    const cdouble c[2] = {m.G_11, m.G_22};
    const cdouble c_a = m.G_aa;
    const double g[2] = {m.g_1, m.g_2};
    const double kappa_m[2] = {m.kappa_m1, m.kappa_m2};
    const double Delta_m[2] = {m.Delta_m1_eff, m.Delta_m2_eff};
    const double omega_b[3] = {m.omega_b1, m.omega_b2, m.omega_b3};
    const double gamma[3] = {m.gamma_1, m.gamma_2, m.gamma_3};

    // da/dt = -(kappa_a + i Delta_a) da - i sum g_r dm_r + i g_a a_s dq3
    J(kA, kA) = -(m.kappa_a + I * m.Delta_a_eff);
    J(kAdag, kAdag) = -(m.kappa_a - I * m.Delta_a_eff);
    J(kA, kQ3) = I * c_a;
    J(kAdag, kQ3) = -I * std::conj(c_a);

    for (int r = 0; r < 2; ++r) {
        const int mr = kM1 + 2 * r;
        const int mrd = kM1dag + 2 * r;
        const int qr = kQ1 + 2 * r;
        const int pr = kP1 + 2 * r;

        J(kA, mr) = -I * g[r];
        J(kAdag, mrd) = I * g[r];

        // dm_r/dt = -(kappa + i Delta) dm_r - i g_r da - i G_0r m_rs dq_r
        J(mr, mr) = -(kappa_m[r] + I * Delta_m[r]);
        J(mrd, mrd) = -(kappa_m[r] - I * Delta_m[r]);
        J(mr, kA) = -I * g[r];
        J(mrd, kAdag) = I * g[r];
        J(mr, qr) = -I * c[r];
        J(mrd, qr) = I * std::conj(c[r]);

        // dq/dt = omega p ; dp/dt = -omega q - gamma p - G_0r (m* dm + m dm^+)
        J(qr, pr) = omega_b[r];
        J(pr, qr) = -omega_b[r];
        J(pr, pr) = -gamma[r];
        J(pr, mr) = -std::conj(c[r]);
        if (!options.rotating_wave) {
            J(pr, mrd) = -c[r];
        }
    }

    // dp3/dt = -omega_b3 q3 - gamma_3 p3 + g_a (a* da + a da^+)
    J(kQ3, kP3) = omega_b[2];
    J(kP3, kQ3) = -omega_b[2];
    J(kP3, kP3) = -gamma[2];
    J(kP3, kA) = std::conj(c_a);
    if (!options.rotating_wave) {
        J(kP3, kAdag) = c_a;
    }
    return J;
}

SidebandSystem assemble_sideband_matrix(const LinearizedModel& model, double delta,
                                        const OracleOptions& options) {
    SidebandSystem system;
    system.delta = delta;
    const SidebandMatrix J = fluctuation_jacobian(model, options);
    system.rhs = SidebandVector::Zero();
    if (options.sideband == Sideband::Lower) {
        // -i delta v = J v + eps_p e_a
        system.matrix = J + I * delta * SidebandMatrix::Identity();
        system.rhs(kA) = -1.0;
    } else {
        // +i delta v = J v + conj(eps_p) e_{a^+}
        system.matrix = J - I * delta * SidebandMatrix::Identity();
        system.rhs(kAdag) = -1.0;
    }
    return system;
}

SidebandSolution solve_probe_response(const SidebandSystem& system) {
    const Eigen::PartialPivLU<SidebandMatrix> lu(system.matrix);
    const double rcond = lu.rcond();
    const double condition = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    if (!(condition <= kMaxCondition)) {
        throw SingularSystemError("sideband matrix ill-conditioned (estimate " +
                                      std::to_string(condition) + ") at delta = " +
                                      std::to_string(system.delta) + " rad/s",
                                  condition);
    }

    SidebandSolution solution;
    solution.amplitudes = lu.solve(system.rhs);
    solution.a_minus = solution.amplitudes(kA);
    solution.condition = condition;
    solution.residual =
        (system.matrix * solution.amplitudes - system.rhs).norm() / system.rhs.norm();
    if (!(solution.residual < kMaxResidual)) {
        throw SolverError("sideband solve residual " + std::to_string(solution.residual) +
                          " exceeds tolerance at delta = " + std::to_string(system.delta));
    }
    return solution;
}

cdouble oracle_sideband_amplitude(const LinearizedModel& model, double delta,
                                  const OracleOptions& options) {
    return solve_probe_response(assemble_sideband_matrix(model, delta, options)).a_minus;
}

ValidationReport cross_validate(const LinearizedModel& model, const std::vector<double>& grid,
                                const OracleOptions& options) {
    ValidationReport report;
    report.points.reserve(grid.size());
    bool have_max = false;
    for (const double delta : grid) {
        ValidationPoint point;
        point.delta = delta;
        try {
            const cdouble chain = probe_sideband_amplitude(model, delta);
            const cdouble oracle = oracle_sideband_amplitude(model, delta, options);
            const double err = std::abs(chain - oracle) / std::abs(oracle);
            point.rel_err = err;
            if (!have_max || err > report.max_rel_err) {
                report.max_rel_err = err;
                report.argmax_delta = delta;
                have_max = true;
            }
        } catch (const PoleError& e) {
            point.flagged = true;
            point.reason = std::string("pole: ") + e.what();
        } catch (const SolverError& e) {
            point.flagged = true;
            point.reason = e.what();
        }
        if (point.flagged) ++report.flagged;
        report.points.push_back(std::move(point));
    }
    return report;
}

}  // namespace magmech
