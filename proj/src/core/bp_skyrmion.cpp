#include "bp_skyrmion.hpp"

#include <cmath>
#include <string>

#include "constants.hpp"
#include "error.hpp"

namespace skybus::bp {

using constants::pi;

void Material::validate() const {
    require(std::isfinite(saturation_magnetization) && saturation_magnetization > 0.0,
            "saturation magnetization must be positive");
    require(std::isfinite(g_factor) && g_factor > 0.0, "g factor must be positive");
    require(std::isfinite(gilbert_damping) && gilbert_damping >= 0.0, "Gilbert damping must be non-negative");
}

void SkyrmionConfig::validate() const {
    require(std::isfinite(geometry.radius) && geometry.radius > 0.0, "disk radius must be positive");
    require(std::isfinite(geometry.thickness) && geometry.thickness > 0.0, "disk thickness must be positive");
    require(std::isfinite(reduced_radius) && reduced_radius > 0.0 && reduced_radius < 1.0,
            "reduced skyrmion radius must lie in (0, 1)");
    require(std::isfinite(phase), "skyrmion phase must be finite");
    require(chirality == 1 || chirality == -1, "chirality must be +1 or -1");
    require(polarity == 1 || polarity == -1, "polarity must be +1 or -1");
    require(topological_charge == 1 || topological_charge == -1, "topological charge must be +1 or -1");
    // Bloch textures fix C = sin(phase); reject a contradicting pair.
    const double s = std::sin(phase);
    if (std::abs(std::abs(s) - 1.0) < 1e-12)
        require(static_cast<double>(chirality) * s > 0.0, "chirality contradicts the Bloch phase");
}

bool SkyrmionConfig::thin_disk_warning() const { return geometry.thickness > 0.1 * geometry.radius; }

double gyration_radius(const SkyrmionConfig& cfg, const Material& mat) {
    cfg.validate();
    mat.validate();
    const double R = cfg.geometry.radius, h = cfg.geometry.thickness;
    const double rsk = cfg.skyrmion_radius();
    return std::sqrt(2.0 * mat.g_factor * constants::bohr_magneton * (R * R + rsk * rsk) /
                     (pi * h * R * R * mat.saturation_magnetization));
}

Vec3 magnetization(double x, double y, const SkyrmionConfig& cfg) {
    const double R = cfg.geometry.radius, c = cfg.reduced_radius;
    const double xr = x / R, yr = y / R;
    const double rho2 = xr * xr + yr * yr;
    const double s = c * c + rho2;
    const double cp = std::cos(cfg.phase), sp = std::sin(cfg.phase);
    return {2.0 * c * (xr * cp - yr * sp) / s, 2.0 * c * (xr * sp + yr * cp) / s,
            static_cast<double>(cfg.polarity) * (c * c - rho2) / s};
}

CVec3 mode_shape(double xr, double yr, const SkyrmionConfig& cfg) {
    const double c = cfg.reduced_radius;
    const double s = c * c + xr * xr + yr * yr;
    const double s2 = s * s;
    const double cp = std::cos(cfg.phase), sp = std::sin(cfg.phase);
    const double ax = xr * cp - yr * sp;  // m_x * s / (2c)
    const double ay = xr * sp + yr * cp;
    const double P = static_cast<double>(cfg.polarity);

    const double dx_mx = 2.0 * c * cp / s - 4.0 * c * ax * xr / s2;
    const double dy_mx = -2.0 * c * sp / s - 4.0 * c * ax * yr / s2;
    const double dx_my = 2.0 * c * sp / s - 4.0 * c * ay * xr / s2;
    const double dy_my = 2.0 * c * cp / s - 4.0 * c * ay * yr / s2;
    const double dx_mz = -4.0 * P * c * c * xr / s2;
    const double dy_mz = -4.0 * P * c * c * yr / s2;

    const cdouble iP(0.0, P);
    return {-0.5 * (dx_mx - iP * dy_mx), -0.5 * (dx_my - iP * dy_my), -0.5 * (dx_mz - iP * dy_mz)};
}

ModeFourier mode_fourier(double rho, const SkyrmionConfig& cfg) {
    ModeFourier f{};
    const double c = cfg.reduced_radius;
    const double s = c * c + rho * rho;
    const double s2 = s * s;
    const cdouble ep = std::polar(1.0, cfg.phase), em = std::conj(ep);
    const cdouble I(0.0, 1.0);
    constexpr int k0 = 2;
    if (cfg.polarity < 0) {
        f.coeff[0][k0 + 2] = c * ep * rho * rho / s2;
        f.coeff[0][k0] = -c * c * c * em / s2;
        f.coeff[1][k0 + 2] = -I * c * ep * rho * rho / s2;
        f.coeff[1][k0] = -I * c * c * c * em / s2;
        f.coeff[2][k0 + 1] = -2.0 * c * c * rho / s2;
    } else {
        f.coeff[0][k0 - 2] = c * em * rho * rho / s2;
        f.coeff[0][k0] = -c * c * c * ep / s2;
        f.coeff[1][k0 - 2] = I * c * em * rho * rho / s2;
        f.coeff[1][k0] = I * c * c * c * ep / s2;
        f.coeff[2][k0 - 1] = 2.0 * c * c * rho / s2;
    }
    return f;
}

CVec3 mode_function(double x, double y, const SkyrmionConfig& cfg, double r_c) {
    const double R = cfg.geometry.radius;
    const CVec3 u = mode_shape(x / R, y / R, cfg);
    const double scale = r_c / R;
    return {scale * u[0], scale * u[1], scale * u[2]};
}

cdouble spinwave_amplitude(double x, double y, const SkyrmionConfig& cfg, const Material& mat, double r_c) {
    const Vec3 m = magnetization(x, y, cfg);
    const CVec3 dm = mode_function(x, y, cfg, r_c);
    // Local frame: m = cos(Theta) u_hat + sin(Theta) z_hat.
    const double az = std::atan2(y, x) + cfg.phase;
    const double ux = std::cos(az), uy = std::sin(az);
    const double cosT = std::hypot(m[0], m[1]);
    const double sinT = m[2];
    const Vec3 e1{uy, -ux, 0.0};
    const Vec3 e2{sinT * ux, sinT * uy, -cosT};
    const cdouble I(0.0, 1.0);
    cdouble proj = 0.0;
    for (int j = 0; j < 3; ++j) proj += dm[j] * (e1[j] + I * e2[j]);
    proj /= std::sqrt(2.0);
    return std::sqrt(mat.saturation_magnetization / (mat.g_factor * constants::bohr_magneton)) * proj / 2.0;
}

GyrationFrequencies gyration_frequencies(const GyrationParams& p) {
    require(std::isfinite(p.inertial_mass) && p.inertial_mass > 0.0, "inertial mass must be positive");
    require(std::isfinite(p.stiffness) && p.stiffness >= 0.0, "stiffness must be non-negative");
    require(std::isfinite(p.gyrocoupling), "gyrocoupling must be finite");
    GyrationFrequencies f;
    f.omega0_prime = p.gyrocoupling / (2.0 * p.inertial_mass);
    f.omega = std::sqrt(f.omega0_prime * f.omega0_prime + p.stiffness / p.inertial_mass);
    f.omega_cw = f.omega + f.omega0_prime;
    f.omega_ccw = f.omega - f.omega0_prime;
    const double slack = 1e-12 * f.omega;
    if (f.omega_cw < -slack || f.omega_ccw < -slack)
        fail(ErrorCode::NegativeFrequency, "gyration branch frequency is negative");
    f.omega_cw = std::max(f.omega_cw, 0.0);
    f.omega_ccw = std::max(f.omega_ccw, 0.0);
    return f;
}

double gyrocoupling(double thickness, double saturation_magnetization, int topological_charge) {
    return 4.0 * pi * thickness * saturation_magnetization * static_cast<double>(topological_charge) /
           constants::electron_gyromagnetic_ratio;
}

}  // namespace skybus::bp
