#pragma once

// Dynamic stray field of the gyration mode, evaluated by direct dipolar
// integration over the disk volume, and its flux through a planar loop.
// Reduced coordinates are lengths over the disk radius R; z = 0 is the disk midplane.

#include <string>

#include "bp_skyrmion.hpp"
#include "types.hpp"

namespace skybus::stray {

enum class Scheme { FixedGrid, Adaptive };

struct QuadratureSpec {
    int radial_points = 64;
    int azimuthal_points = 64;
    int thickness_points = 16;
    int loop_radial_points = 16;
    int loop_azimuthal_points = 32;
    double relative_tolerance = 1e-4;
    Scheme scheme = Scheme::FixedGrid;
    int max_refinements = 3;

    void validate() const;
    QuadratureSpec doubled() const;
};

// Field in tesla at a point (m) outside the disk volume.
CVec3 field_mode_at(const Vec3& point, const bp::SkyrmionConfig& cfg, const bp::Material& mat, double r_c,
                    const QuadratureSpec& quad);

// Reduced dipolar integral J with B = mu0 M_S / (4 pi) * (r_c / R) * J. Point in reduced units.
CVec3 reduced_field(const Vec3& point_r, const bp::SkyrmionConfig& cfg, const QuadratureSpec& quad);

// On-axis reduced integral with the azimuth integrated in closed form.
// z_r is the reduced height above the midplane (signed, |z_r| > h/2R).
CVec3 on_axis_reduced(double z_r, const bp::SkyrmionConfig& cfg, const QuadratureSpec& quad);

// On-axis field in tesla at height z (m) above the midplane.
CVec3 on_axis_components(double z, const bp::SkyrmionConfig& cfg, const bp::Material& mat, double r_c,
                         const QuadratureSpec& quad);

struct SquidLoop {
    Vec3 center{};       // m, z measured from the disk midplane
    double radius = 0.0; // m
};

struct FluxAmplitude {
    cdouble reduced{};        // integral of (r_c/R) J_z over the loop area, in units of R^2
    double magnitude = 0.0;   // F_Phi = |reduced|
    double phase = 0.0;       // arg(reduced)
    double flux_scale = 0.0;  // mu0 M_S R^2 F_Phi / (4 pi), Wb
};

FluxAmplitude flux_amplitude(const SquidLoop& loop, const bp::SkyrmionConfig& cfg, const bp::Material& mat,
                             double r_c, const QuadratureSpec& quad);

}  // namespace skybus::stray
