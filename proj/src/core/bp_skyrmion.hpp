#pragma once

// Belavin-Polyakov skyrmion in a thin disk: static texture, breathing-free
// gyration mode and its spin-wave amplitude, gyration frequencies.

#include "types.hpp"

namespace skybus::bp {

struct Material {
    double saturation_magnetization = 0.0;  // A/m
    double g_factor = 2.0;
    double gilbert_damping = 0.0;

    void validate() const;
};

struct DiskGeometry {
    double radius = 0.0;     // m
    double thickness = 0.0;  // m
};

struct SkyrmionConfig {
    DiskGeometry geometry;
    double reduced_radius = 0.1;  // c = R_Sk / R
    double phase = 1.5707963267948966;
    int chirality = 1;
    int polarity = -1;
    int topological_charge = -1;

    void validate() const;
    // Thickness is no longer small against the lateral size.
    bool thin_disk_warning() const;
    double skyrmion_radius() const { return reduced_radius * geometry.radius; }
};

// Azimuthal Fourier content of the dimensionless mode u at reduced radius rho:
// u_j(rho, phi) = sum_k coeff[j][k + 2] exp(i k phi), k = -2..2.
struct ModeFourier {
    cdouble coeff[3][5];
};

double gyration_radius(const SkyrmionConfig& cfg, const Material& mat);

Vec3 magnetization(double x, double y, const SkyrmionConfig& cfg);

// Dimensionless mode u = delta_m * R / r_c at reduced coordinates (x/R, y/R).
CVec3 mode_shape(double xr, double yr, const SkyrmionConfig& cfg);
ModeFourier mode_fourier(double rho_r, const SkyrmionConfig& cfg);

CVec3 mode_function(double x, double y, const SkyrmionConfig& cfg, double r_c);

// psi in m^(-3/2): h_G * integral |psi|^2 dA over the disk equals one.
cdouble spinwave_amplitude(double x, double y, const SkyrmionConfig& cfg, const Material& mat, double r_c);

struct GyrationParams {
    double inertial_mass = 0.0;  // kg
    double gyrocoupling = 0.0;   // kg/s, signed
    double stiffness = 0.0;      // N/m
};

struct GyrationFrequencies {
    double omega0_prime = 0.0;  // rad/s
    double omega = 0.0;
    double omega_cw = 0.0;
    double omega_ccw = 0.0;
};

GyrationFrequencies gyration_frequencies(const GyrationParams& p);

// G = 4 pi h_G M_S Q / gamma_e
double gyrocoupling(double thickness, double saturation_magnetization, int topological_charge);

}  // namespace skybus::bp
