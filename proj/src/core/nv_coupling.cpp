#include "nv_coupling.hpp"

#include <cmath>

#include "constants.hpp"
#include "error.hpp"

namespace skybus::nv {

void NVCenter::validate() const {
    require(std::isfinite(standoff) && standoff > 0.0, "NV standoff must be positive");
    require(std::isfinite(zero_field_splitting) && zero_field_splitting > 0.0,
            "zero-field splitting must be positive");
    require(std::isfinite(axial_field), "axial field must be finite");
}

double nv_qubit_frequency(const NVCenter& nv) {
    nv.validate();
    const double w = nv.zero_field_splitting - constants::electron_gyromagnetic_ratio * nv.axial_field;
    if (!(w > 0.0)) fail(ErrorCode::NegativeFrequency, "axial field pushes the NV transition below zero");
    return w;
}

FsnIntegral f_sn_integral(double c, double height_r, double thickness_r, const stray::QuadratureSpec& quad,
                          double phase, int polarity) {
    bp::SkyrmionConfig cfg;
    cfg.geometry = {1.0, thickness_r};
    cfg.reduced_radius = c;
    cfg.phase = phase;
    cfg.polarity = polarity;
    cfg.chirality = std::sin(phase) < 0.0 ? -1 : 1;
    const CVec3 J = stray::on_axis_reduced(height_r, cfg, quad);
    // lambda_j = -gamma_e B_j, so the coupling phase is that of -J_j.
    FsnIntegral out;
    out.modulus = std::abs(J[0]) / constants::pi;
    out.phase_x = std::arg(-J[0]);
    out.phase_y = std::arg(-J[1]);
    return out;
}

NVCouplingResult lambda_sn(const bp::SkyrmionConfig& cfg, const bp::Material& mat, const NVCenter& nv,
                           const stray::QuadratureSpec& quad) {
    cfg.validate();
    mat.validate();
    nv.validate();
    NVCouplingResult out;
    const double R = cfg.geometry.radius;
    out.gyration_radius = bp::gyration_radius(cfg, mat);
    out.height = nv.standoff + 0.5 * cfg.geometry.thickness;
    const FsnIntegral f = f_sn_integral(cfg.reduced_radius, out.height / R, cfg.geometry.thickness / R, quad,
                                        cfg.phase, cfg.polarity);
    out.f_sn = f.modulus;
    out.phase_x = f.phase_x;
    out.phase_y = f.phase_y;
    out.lambda_sn = constants::electron_gyromagnetic_ratio * constants::vacuum_permeability *
                    mat.saturation_magnetization * out.gyration_radius * out.f_sn / (4.0 * R);
    return out;
}

}  // namespace skybus::nv
