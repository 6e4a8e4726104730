#pragma once

#include <numbers>

namespace magmech {

inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double hbar = 1.054571817e-34;  // J s

/// Material and gyromagnetic constants for YIG.
struct PhysicalConstants {
    double gyromagnetic_ratio = two_pi * 28e9;  // rad s^-1 T^-1
    double spin_density = 4.22e27;              // spins per m^3
    double spin_per_ion = 2.5;                  // Fe3+ ground state
};

}  // namespace magmech
