#pragma once

#include <numbers>

namespace skybus::constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline constexpr double electron_gyromagnetic_ratio = 1.760859e11;  // rad s^-1 T^-1
inline constexpr double bohr_magneton = 9.2740100783e-24;           // J/T
inline constexpr double vacuum_permeability = 1.25663706212e-6;     // T m/A
inline constexpr double flux_quantum = 2.067833848e-15;             // Wb
inline constexpr double planck = 6.62607015e-34;                    // J s
inline constexpr double reduced_planck = planck / two_pi;

inline constexpr double hz_to_angular(double f) { return two_pi * f; }
inline constexpr double angular_to_hz(double w) { return w / two_pi; }

}  // namespace skybus::constants
