#pragma once

#include "bp_skyrmion.hpp"
#include "stray_field.hpp"

namespace skybus::nv {

struct NVCenter {
    double standoff = 0.0;                             // d_G, m, from the disk top face
    double zero_field_splitting = 2.0 * 3.141592653589793 * 2.87e9;  // rad/s
    double axial_field = 0.0;                          // T

    void validate() const;
};

// omega_NV = D - gamma_e B_z, rad/s
double nv_qubit_frequency(const NVCenter& nv);

struct FsnIntegral {
    double modulus = 0.0;  // F_SN
    double phase_x = 0.0;  // arg(lambda_x)
    double phase_y = 0.0;  // arg(lambda_y)
};

// Dimensionless on-axis integral for a texture of given phase and polarity;
// heights and thickness in units of R, height measured from the midplane.
FsnIntegral f_sn_integral(double c, double height_r, double thickness_r, const stray::QuadratureSpec& quad,
                          double phase = 1.5707963267948966, int polarity = -1);

struct NVCouplingResult {
    double lambda_sn = 0.0;  // rad/s
    double f_sn = 0.0;
    double phase_x = 0.0;
    double phase_y = 0.0;
    double gyration_radius = 0.0;  // m
    double height = 0.0;           // H_SN = d_G + h_G / 2, m
};

NVCouplingResult lambda_sn(const bp::SkyrmionConfig& cfg, const bp::Material& mat, const NVCenter& nv,
                           const stray::QuadratureSpec& quad);

}  // namespace skybus::nv
