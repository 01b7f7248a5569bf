#pragma once

#include <cmath>
#include <complex>

#include "bp_skyrmion.hpp"
#include "stray_field.hpp"

namespace fixtures {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr double nm = 1e-9;
inline constexpr double MHz = two_pi * 1e6;
inline constexpr double GHz = two_pi * 1e9;

inline constexpr double gamma_e = 1.760859e11;
inline constexpr double mu_B = 9.2740100783e-24;
inline constexpr double mu_0 = 1.25663706212e-6;
inline constexpr double phi_0 = 2.067833848e-15;
inline constexpr double hbar = 1.054571817e-34;

// 100 nm disk, 5 nm thick, c = 0.1, Bloch phase, P = Q = -1.
inline skybus::bp::SkyrmionConfig reference_skyrmion() {
    skybus::bp::SkyrmionConfig c;
    c.geometry = {100 * nm, 5 * nm};
    c.reduced_radius = 0.1;
    c.phase = pi / 2;
    c.chirality = 1;
    c.polarity = -1;
    c.topological_charge = -1;
    return c;
}

inline skybus::bp::Material reference_material() { return {1e6, 2.0, 0.0}; }

// Loop (R/2, 0) at 2 h_G beneath the midplane, 50 nm radius.
inline skybus::stray::SquidLoop reference_loop() { return {{50 * nm, 0.0, -10 * nm}, 50 * nm}; }

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace fixtures
