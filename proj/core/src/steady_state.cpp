#include "magmech/steady_state.hpp"

#include "magmech/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace magmech {

namespace {

constexpr cdouble I{0.0, 1.0};

double relative_change(cdouble next, cdouble prev) {
    const double scale = std::max(std::abs(next), std::abs(prev));
    return scale == 0.0 ? 0.0 : std::abs(next - prev) / scale;
}

double relative_change(double next, double prev) {
    return relative_change(cdouble{next}, cdouble{prev});
}

struct BareCouplings {
    double G_01 = 0.0;
    double G_02 = 0.0;
    double g_a = 0.0;
};

BareCouplings bare_couplings(const RawParams& p) {
    return {p.G_01.value_or(0.0), p.G_02.value_or(0.0), p.g_a_bare.value_or(0.0)};
}

EffectiveDetunings detunings_for(const RawParams& p, double q1, double q2, double q3) {
    if (!p.uses_static_shifts()) {
        return {p.Delta_a, p.Delta_m1 + p.Delta_B, p.Delta_m2};
    }
    return shifted_detunings(p, q1, q2, q3);
}

}  // namespace

EffectiveDetunings shifted_detunings(const RawParams& p, double q_1s, double q_2s, double q_3s) {
    const auto bare = bare_couplings(p);
    return {
        p.Delta_a - bare.g_a * q_3s,
        p.Delta_m1 + p.Delta_B + bare.G_01 * q_1s,
        p.Delta_m2 + bare.G_02 * q_2s,
    };
}

namespace {

// Fields implied by fixed displacements, with the displacements they in turn produce.
SteadyState map_displacements(const RawParams& p, const DerivedDrive& drive, const SteadyState& from) {
    const auto bare = bare_couplings(p);
    const auto det = detunings_for(p, from.q_1s, from.q_2s, from.q_3s);

    Eigen::Matrix3cd lhs;
    lhs << p.kappa_a + I * det.Delta_a, I * p.g_1, I * p.g_2,
           I * p.g_1, p.kappa_m1 + I * det.Delta_m1, 0.0,
           I * p.g_2, 0.0, p.kappa_m2 + I * det.Delta_m2;
    const Eigen::Vector3cd rhs(0.0, drive.Omega, 0.0);

    const Eigen::PartialPivLU<Eigen::Matrix3cd> lu(lhs);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-15)) {
        throw SingularSystemError("singular steady-state system (condition estimate " +
                                      std::to_string(1.0 / rcond) + ")",
                                  1.0 / rcond);
    }
    const Eigen::Vector3cd amps = lu.solve(rhs);

    SteadyState next;
    next.a_s = amps(0);
    next.m_1s = amps(1);
    next.m_2s = amps(2);
    next.q_1s = -bare.G_01 * std::norm(next.m_1s) / p.omega_b1;
    next.q_2s = -bare.G_02 * std::norm(next.m_2s) / p.omega_b2;
    next.q_3s = bare.g_a * std::norm(next.a_s) / p.omega_b3;
    return next;
}

double change_between(const SteadyState& next, const SteadyState& prev) {
    return std::max({
        relative_change(next.a_s, prev.a_s),
        relative_change(next.m_1s, prev.m_1s),
        relative_change(next.m_2s, prev.m_2s),
        relative_change(next.q_1s, prev.q_1s),
        relative_change(next.q_2s, prev.q_2s),
        relative_change(next.q_3s, prev.q_3s),
    });
}

Eigen::Vector3d displacements(const SteadyState& s) { return {s.q_1s, s.q_2s, s.q_3s}; }

SteadyState with_displacements(const Eigen::Vector3d& q) {
    SteadyState s;
    s.q_1s = q(0);
    s.q_2s = q(1);
    s.q_3s = q(2);
    return s;
}

}  // namespace

SteadyState solve_steady_state(const RawParams& p, const DerivedDrive& drive,
                               const SteadyStateOptions& options) {
    if (!(options.tol > 0.0)) {
        throw ConfigError("steady_state.tol", "must be positive");
    }
    if (options.max_iter < 1) {
        throw ConfigError("steady_state.max_iter", "must be at least 1");
    }

    SteadyState state;
    double previous_residual = std::numeric_limits<double>::infinity();
    // Near a strongly shifted detuning the undamped map can have slope well below -1
    // and settle into a 2-cycle, so the step is halved whenever the residual stalls.
    double relax = 1.0;
    constexpr double min_relax = 1.0 / 64.0;
    int iter = 1;

    for (; iter <= options.max_iter; ++iter) {
        SteadyState next = map_displacements(p, drive, state);
        const double residual = change_between(next, state);
        next.residual = residual;
        next.iterations = iter;
        if (residual < options.tol) {
            return next;
        }

        if (iter > 1 && residual >= previous_residual) {
            if (relax == min_relax) {
                break;
            }
            relax = std::max(0.5 * relax, min_relax);
        }
        previous_residual = residual;

        state.a_s += relax * (next.a_s - state.a_s);
        state.m_1s += relax * (next.m_1s - state.m_1s);
        state.m_2s += relax * (next.m_2s - state.m_2s);
        state.q_1s += relax * (next.q_1s - state.q_1s);
        state.q_2s += relax * (next.q_2s - state.q_2s);
        state.q_3s += relax * (next.q_3s - state.q_3s);
        state.residual = residual;
        state.iterations = iter;
    }

    // Damping stalled: Newton on the displacements, q - F(q) = 0, with backtracking.
    Eigen::Vector3d q = displacements(state);
    auto defect = [&](const Eigen::Vector3d& x) {
        return Eigen::Vector3d(x - displacements(map_displacements(p, drive, with_displacements(x))));
    };
    Eigen::Vector3d r = defect(q);
    for (++iter; iter <= options.max_iter; ++iter) {
        Eigen::Matrix3d jac;
        for (int j = 0; j < 3; ++j) {
            Eigen::Vector3d shifted = q;
            const double h = 1e-7 * std::max(std::abs(q(j)), 1.0);
            shifted(j) += h;
            jac.col(j) = (defect(shifted) - r) / h;
        }
        const Eigen::Vector3d step = jac.fullPivLu().solve(-r);
        double t = 1.0;
        Eigen::Vector3d trial = q + step;
        Eigen::Vector3d r_trial = defect(trial);
        for (int k = 0; k < 40 && !(r_trial.norm() < r.norm()); ++k) {
            t *= 0.5;
            trial = q + t * step;
            r_trial = defect(trial);
        }
        q = trial;
        r = r_trial;

        SteadyState fields = map_displacements(p, drive, with_displacements(q));
        fields.q_1s = q(0);
        fields.q_2s = q(1);
        fields.q_3s = q(2);
        const double residual = change_between(map_displacements(p, drive, fields), fields);
        fields.residual = residual;
        fields.iterations = iter;
        state = fields;
        if (residual < options.tol) {
            return state;
        }
    }
    throw ConvergenceError("steady state did not converge after " +
                               std::to_string(options.max_iter) +
                               " iterations (last residual " + std::to_string(state.residual) + ")",
                           state.residual);
}

double fixed_point_residual(const RawParams& p, const DerivedDrive& drive, const SteadyState& s) {
    const auto bare = bare_couplings(p);
    const auto det = detunings_for(p, s.q_1s, s.q_2s, s.q_3s);

    const cdouble a = (-I * p.g_1 * s.m_1s - I * p.g_2 * s.m_2s) / (p.kappa_a + I * det.Delta_a);
    const cdouble m1 = (drive.Omega - I * p.g_1 * s.a_s) / (p.kappa_m1 + I * det.Delta_m1);
    const cdouble m2 = (-I * p.g_2 * s.a_s) / (p.kappa_m2 + I * det.Delta_m2);
    const double q1 = -bare.G_01 * std::norm(s.m_1s) / p.omega_b1;
    const double q2 = -bare.G_02 * std::norm(s.m_2s) / p.omega_b2;
    const double q3 = bare.g_a * std::norm(s.a_s) / p.omega_b3;

    return std::max({
        relative_change(a, s.a_s),
        relative_change(m1, s.m_1s),
        relative_change(m2, s.m_2s),
        relative_change(q1, s.q_1s),
        relative_change(q2, s.q_2s),
        relative_change(q3, s.q_3s),
    });
}

LinearizedModel effective_model(const RawParams& p, const std::optional<SteadyState>& steady) {
    LinearizedModel m;
    m.kappa_a = p.kappa_a;
    m.kappa_m1 = p.kappa_m1;
    m.kappa_m2 = p.kappa_m2;
    m.gamma_1 = p.gamma_1;
    m.gamma_2 = p.gamma_2;
    m.gamma_3 = p.gamma_3;
    m.omega_b1 = p.omega_b1;
    m.omega_b2 = p.omega_b2;
    m.omega_b3 = p.omega_b3;
    m.g_1 = p.g_1;
    m.g_2 = p.g_2;
    m.barnett_shift = p.Delta_B;
    m.omega_b = p.omega_b();

    EffectiveDetunings det{p.Delta_a, p.Delta_m1 + p.Delta_B, p.Delta_m2};
    if (p.uses_static_shifts() && steady) {
        det = shifted_detunings(p, steady->q_1s, steady->q_2s, steady->q_3s);
    }
    m.Delta_a_eff = det.Delta_a;
    m.Delta_m1_eff = det.Delta_m1;
    m.Delta_m2_eff = det.Delta_m2;

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (p.mode == ParamMode::EffectiveParams) {
        if (!p.G_1 || !p.G_2 || !p.G_a) {
            throw ConfigError(!p.G_1 ? "G_1_hz" : (!p.G_2 ? "G_2_hz" : "G_a_hz"),
                              "required in effective mode");
        }
        m.G_11 = *p.G_1 * inv_sqrt2;
        m.G_22 = *p.G_2 * inv_sqrt2;
        m.G_aa = *p.G_a * inv_sqrt2;
    } else {
        if (!steady) {
            throw ConfigError("steady_state", "first_principles mode needs a converged steady state");
        }
        const auto bare = bare_couplings(p);
        // |G_r| = sqrt(2) G_0r |m_rs|, then divided by sqrt(2) for the chain.
        m.G_11 = bare.G_01 * std::abs(steady->m_1s);
        m.G_22 = bare.G_02 * std::abs(steady->m_2s);
        m.G_aa = bare.g_a * std::abs(steady->a_s);
    }
    return m;
}

LinearizedModel with_barnett_shift(const LinearizedModel& model, double Delta_B) {
    LinearizedModel out = model;
    out.Delta_m1_eff = model.Delta_m1_eff - model.barnett_shift + Delta_B;
    out.barnett_shift = Delta_B;
    return out;
}

LinearizedModel build_model(const RawParams& params, const SteadyStateOptions& options) {
    if (params.mode == ParamMode::EffectiveParams) {
        return effective_model(params);
    }
    const auto drive = derive_drive(params);
    return effective_model(params, solve_steady_state(params, drive, options));
}

}  // namespace magmech
