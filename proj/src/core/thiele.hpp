#pragma once

// Thiele equation for the skyrmion center:
//   M R'' = F - R' x G z_hat - k R - d R'
// integrated with fixed-step RK4; spectra by DFT of X(t).

#include <optional>
#include <vector>

namespace skybus::thiele {

struct ThieleParams {
    double inertial_mass = 0.0;  // kg
    double gyrocoupling = 0.0;   // kg/s, signed
    double stiffness = 0.0;      // N/m
    double damping = 0.0;        // kg/s

    void validate() const;
};

// F(t) = susceptibility * B0 * sinc(2 pi f_x (t - t0)) along x.
struct SincPulse {
    double field_amplitude = 0.0;   // B0, T
    double cutoff_frequency = 0.0;  // f_x, Hz
    double time_shift = 0.0;        // t0, s
    double susceptibility = 0.0;    // N/T

    void validate() const;
    double force(double t) const;
};

struct Trajectory {
    std::vector<double> times, x, y, vx, vy;
};

struct IntegrateOptions {
    int substeps = 1;
};

Trajectory integrate(const ThieleParams& p, const std::optional<SincPulse>& pulse, const double x0[2],
                     const double v0[2], const std::vector<double>& times, const IntegrateOptions& options = {});

// Kinetic plus potential energy, M |v|^2 / 2 + k |R|^2 / 2.
double energy(const ThieleParams& p, double x, double y, double vx, double vy);

enum class Window { Hann, Rectangular };

struct Spectrum {
    std::vector<double> frequency;  // Hz
    std::vector<double> power;      // normalized to the maximum
    double bin_width = 0.0;
    Window window = Window::Hann;
};

Spectrum spectrum(const Trajectory& traj, Window window = Window::Hann);

struct Resonance {
    double f_peak = 0.0;          // Hz
    double fwhm = 0.0;            // Hz
    double peak_ratio = 0.0;      // main over strongest secondary peak
    bool resolution_limited = false;
};

Resonance extract_resonance(const Spectrum& s);

}  // namespace skybus::thiele
