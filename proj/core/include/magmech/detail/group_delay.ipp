#pragma once

#include "magmech/errors.hpp"

#include <cmath>
#include <string>

namespace magmech {

template <typename TransmissionFn>
double group_delay_with(TransmissionFn&& transmission, double delta, double step,
                        const GroupDelayOptions& options) {
    if (!(step > 0.0)) {
        throw SolverError("group delay step must be positive");
    }
    double h = step;
    for (int attempt = 0; attempt <= options.max_halvings; ++attempt, h *= 0.5) {
        const cdouble t_plus = transmission(delta + h);
        const cdouble t_minus = transmission(delta - h);
        const double jump = wrap_phase_difference(std::arg(t_plus) - std::arg(t_minus));
        if (std::abs(jump) <= options.max_phase_jump) {
            return jump / (2.0 * h);
        }
    }
    throw SolverError("group delay stencil phase jump exceeds guard at delta = " +
                      std::to_string(delta) + " rad/s after step refinement");
}

}  // namespace magmech
