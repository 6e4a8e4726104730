#pragma once

#include "magmech/steady_state.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace magmech {

/// Unknown ordering of the first-order sideband vector.
enum SidebandIndex : int {
    kA = 0,
    kAdag = 1,
    kM1 = 2,
    kM1dag = 3,
    kM2 = 4,
    kM2dag = 5,
    kQ1 = 6,
    kP1 = 7,
    kQ2 = 8,
    kP2 = 9,
    kQ3 = 10,
    kP3 = 11,
};

inline constexpr int kSidebandDim = 12;

using SidebandMatrix = Eigen::Matrix<cdouble, kSidebandDim, kSidebandDim>;
using SidebandVector = Eigen::Matrix<cdouble, kSidebandDim, 1>;

/// Which Fourier component is assembled: e^{-i delta t} (Lower, the probe
/// sideband) or e^{+i delta t} (Upper, driven by the conjugate probe).
enum class Sideband { Lower, Upper };

struct OracleOptions {
    // Drops the mechanical forces from the conjugate amplitudes (diagnostic only).
    bool rotating_wave = false;
    Sideband sideband = Sideband::Lower;
};

/// matrix * v = rhs, built by linearizing the Langevin equations about the
/// steady state with noise set to zero. For the lower sideband,
/// matrix = J + i delta I where J is the Jacobian of the fluctuation equations,
/// and rhs = -epsilon_p e_a with epsilon_p = 1.
struct SidebandSystem {
    static constexpr int dimension = kSidebandDim;
    double delta = 0.0;
    SidebandMatrix matrix;
    SidebandVector rhs;
};

/// Jacobian of the linearized fluctuation equations d/dt v = J v + source.
SidebandMatrix fluctuation_jacobian(const LinearizedModel& model, const OracleOptions& options = {});

SidebandSystem assemble_sideband_matrix(const LinearizedModel& model, double delta,
                                        const OracleOptions& options = {});

struct SidebandSolution {
    SidebandVector amplitudes;
    cdouble a_minus;        // component 0 (a_- / epsilon_p for the lower sideband)
    double condition = 0.0;  // reciprocal-condition based estimate of cond_1
    double residual = 0.0;   // ||M v - rhs|| / ||rhs||
};

/// Dense LU with partial pivoting. Throws SingularSystemError when the
/// condition estimate exceeds 1e12.
SidebandSolution solve_probe_response(const SidebandSystem& system);

/// a_- / epsilon_p from the linear solve.
cdouble oracle_sideband_amplitude(const LinearizedModel& model, double delta,
                                  const OracleOptions& options = {});

struct ValidationPoint {
    double delta = 0.0;
    std::optional<double> rel_err;  // empty when the point was flagged
    bool flagged = false;
    std::string reason;
};

struct ValidationReport {
    std::vector<ValidationPoint> points;
    double max_rel_err = 0.0;
    double argmax_delta = 0.0;
    std::size_t flagged = 0;
};

/// Evaluates chain and oracle at every grid point. Poles and singular solves are
/// flagged per point and excluded from the maximum.
ValidationReport cross_validate(const LinearizedModel& model, const std::vector<double>& grid,
                                const OracleOptions& options = {});

}  // namespace magmech
