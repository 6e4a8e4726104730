#pragma once

#include "magmech/presets.hpp"
#include "magmech/steady_state.hpp"

#include <cmath>
#include <complex>

namespace magmech::test {

inline LinearizedModel model_for(const char* preset, std::size_t series = 0) {
    return build_model(find_preset(preset).series.at(series).params);
}

inline RawParams uncoupled() {
    RawParams p = table1_params();
    p.g_1 = p.g_2 = 0.0;
    p.G_1 = p.G_2 = p.G_a = 0.0;
    return p;
}

inline double rel_err(std::complex<double> a, std::complex<double> b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace magmech::test
