#include "stray_field.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "constants.hpp"
#include "error.hpp"
#include "quadrature.hpp"

namespace skybus::stray {

namespace {

constexpr double kAbsoluteFloor = 1e-12;

double norm_inf(const CVec3& v) { return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])}); }
double norm_inf(cdouble v) { return std::abs(v); }
CVec3 diff(const CVec3& a, const CVec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
cdouble diff(cdouble a, cdouble b) { return a - b; }

// Fixed grid, or double every count until two successive levels agree.
template <class Eval>
auto run_scheme(const QuadratureSpec& quad, Eval&& eval) {
    quad.validate();
    auto value = eval(quad);
    if (quad.scheme == Scheme::FixedGrid) return value;
    QuadratureSpec q = quad;
    for (int level = 0; level < quad.max_refinements; ++level) {
        q = q.doubled();
        auto next = eval(q);
        const double change = norm_inf(diff(next, value));
        value = next;
        if (change <= quad.relative_tolerance * norm_inf(next) || change <= kAbsoluteFloor) return value;
    }
    fail(ErrorCode::NonConvergence, "adaptive disk quadrature did not reach relative tolerance " +
                                        std::to_string(quad.relative_tolerance) + " within " +
                                        std::to_string(quad.max_refinements) + " refinements");
}

std::size_t per_panel(int total, std::size_t panels) {
    const std::size_t n = (static_cast<std::size_t>(total) + panels - 1) / panels;
    return std::max<std::size_t>(n, 4);
}

// Distance from a reduced point to the disk (zero inside).
double distance_to_disk(const Vec3& p, double half_h) {
    const double rho = std::hypot(p[0], p[1]);
    return std::hypot(std::max(std::abs(p[2]) - half_h, 0.0), std::max(rho - 1.0, 0.0));
}

quad::Rule radial_rule(double c, double rho_f, double dist, int radial_points) {
    std::vector<quad::Feature> features;
    if (rho_f > 0.0 && rho_f < 1.0 + 2.0 * dist) features.push_back({rho_f, dist});
    const auto bp = quad::breakpoints(0.0, 1.0, {c, dist}, features);
    return quad::composite_gauss_legendre(bp, per_panel(radial_points, bp.size() - 1));
}

// Trapezoid nodes on a source ring. The kernel is analytic in a strip of
// half-width a ~ sqrt((rho - rho_f)^2 + dist^2) / sqrt(rho rho_f) around the
// real phi axis; rings with a narrow strip get proportionally more nodes.
std::size_t ring_points(double rho, double rho_f, double dist, int base) {
    constexpr double kStrip = 0.3;
    std::size_t n = static_cast<std::size_t>(base);
    if (rho_f > 0.0) {
        const double a = std::hypot(rho - rho_f, dist) / std::sqrt(rho * rho_f);
        if (a < kStrip) {
            const auto scaled = static_cast<std::size_t>(std::ceil(base * kStrip / a));
            n = std::max(n, scaled + scaled % 2);
        }
    }
    return n;
}

// Source nodes of the disk for one field point: positions, weights and mode values.
struct SourceGrid {
    std::vector<double> x, y, w;
    std::vector<cdouble> ux, uy, uz;
    quad::Rule zr;
};

SourceGrid make_sources(const Vec3& p, const bp::SkyrmionConfig& cfg, const QuadratureSpec& q) {
    const double half_h = 0.5 * cfg.geometry.thickness / cfg.geometry.radius;
    const double dist = std::max(distance_to_disk(p, half_h), 1e-6);
    const double rho_f = std::hypot(p[0], p[1]);
    const quad::Rule rr = radial_rule(cfg.reduced_radius, rho_f, dist, q.radial_points);
    SourceGrid g;
    g.zr = quad::gauss_legendre(static_cast<std::size_t>(q.thickness_points), -half_h, half_h);
    const std::size_t n = rr.size() * static_cast<std::size_t>(q.azimuthal_points);
    g.x.reserve(n);
    g.y.reserve(n);
    g.w.reserve(n);
    g.ux.reserve(n);
    g.uy.reserve(n);
    g.uz.reserve(n);
    for (std::size_t i = 0; i < rr.size(); ++i) {
        const double rho = rr.nodes[i];
        const quad::Rule pr = quad::periodic_trapezoid(ring_points(rho, rho_f, dist, q.azimuthal_points));
        for (std::size_t j = 0; j < pr.size(); ++j) {
            const double x = rho * std::cos(pr.nodes[j]), y = rho * std::sin(pr.nodes[j]);
            const CVec3 u = bp::mode_shape(x, y, cfg);
            g.x.push_back(x);
            g.y.push_back(y);
            g.w.push_back(rho * rr.weights[i] * pr.weights[j]);
            g.ux.push_back(u[0]);
            g.uy.push_back(u[1]);
            g.uz.push_back(u[2]);
        }
    }
    return g;
}

void check_outside(const Vec3& p, const bp::SkyrmionConfig& cfg) {
    const double half_h = 0.5 * cfg.geometry.thickness / cfg.geometry.radius;
    if (std::abs(p[2]) <= half_h && std::hypot(p[0], p[1]) <= 1.0)
        fail(ErrorCode::SingularPoint, "field point lies inside the disk volume");
}

CVec3 reduced_field_grid(const Vec3& p, const bp::SkyrmionConfig& cfg, const QuadratureSpec& q) {
    const SourceGrid g = make_sources(p, cfg, q);
    cdouble jx = 0.0, jy = 0.0, jz = 0.0;
    for (std::size_t k = 0; k < g.zr.size(); ++k) {
        const double dz = p[2] - g.zr.nodes[k];
        const double wz = g.zr.weights[k];
        double sx_re = 0, sx_im = 0, sy_re = 0, sy_im = 0, sz_re = 0, sz_im = 0;
        for (std::size_t n = 0; n < g.x.size(); ++n) {
            const double dx = p[0] - g.x[n], dy = p[1] - g.y[n];
            const double r2 = dx * dx + dy * dy + dz * dz;
            const double ir = 1.0 / std::sqrt(r2);
            const double ir3 = ir / r2;
            const double ir5 = ir3 / r2;
            const cdouble ud = g.ux[n] * dx + g.uy[n] * dy + g.uz[n] * dz;
            const double a = 3.0 * ir5 * g.w[n];
            const double b = ir3 * g.w[n];
            sx_re += a * dx * ud.real() - b * g.ux[n].real();
            sx_im += a * dx * ud.imag() - b * g.ux[n].imag();
            sy_re += a * dy * ud.real() - b * g.uy[n].real();
            sy_im += a * dy * ud.imag() - b * g.uy[n].imag();
            sz_re += a * dz * ud.real() - b * g.uz[n].real();
            sz_im += a * dz * ud.imag() - b * g.uz[n].imag();
        }
        jx += wz * cdouble(sx_re, sx_im);
        jy += wz * cdouble(sy_re, sy_im);
        jz += wz * cdouble(sz_re, sz_im);
    }
    return {jx, jy, jz};
}

cdouble reduced_bz_grid(const Vec3& p, const bp::SkyrmionConfig& cfg, const QuadratureSpec& q) {
    const SourceGrid g = make_sources(p, cfg, q);
    cdouble jz = 0.0;
    for (std::size_t k = 0; k < g.zr.size(); ++k) {
        const double dz = p[2] - g.zr.nodes[k];
        double s_re = 0, s_im = 0;
        for (std::size_t n = 0; n < g.x.size(); ++n) {
            const double dx = p[0] - g.x[n], dy = p[1] - g.y[n];
            const double r2 = dx * dx + dy * dy + dz * dz;
            const double ir = 1.0 / std::sqrt(r2);
            const double ir3 = ir / r2;
            const double a = 3.0 * dz * ir3 / r2;
            const double ud_re = g.ux[n].real() * dx + g.uy[n].real() * dy + g.uz[n].real() * dz;
            const double ud_im = g.ux[n].imag() * dx + g.uy[n].imag() * dy + g.uz[n].imag() * dz;
            s_re += g.w[n] * (a * ud_re - ir3 * g.uz[n].real());
            s_im += g.w[n] * (a * ud_im - ir3 * g.uz[n].imag());
        }
        jz += g.zr.weights[k] * cdouble(s_re, s_im);
    }
    return jz;
}

CVec3 on_axis_grid(double z_r, const bp::SkyrmionConfig& cfg, const QuadratureSpec& q) {
    const double half_h = 0.5 * cfg.geometry.thickness / cfg.geometry.radius;
    const double dist = std::abs(z_r) - half_h;
    const auto bp = quad::breakpoints(0.0, 1.0, {cfg.reduced_radius, dist});
    const quad::Rule rr = quad::composite_gauss_legendre(bp, per_panel(q.radial_points, bp.size() - 1));
    const quad::Rule zr = quad::gauss_legendre(static_cast<std::size_t>(q.thickness_points), -half_h, half_h);
    const cdouble I(0.0, 1.0);
    CVec3 acc{};
    for (std::size_t i = 0; i < rr.size(); ++i) {
        const double rho = rr.nodes[i];
        const bp::ModeFourier f = bp::mode_fourier(rho, cfg);
        auto a = [&](int j, int k) { return f.coeff[j][k + 2]; };
        // Azimuthal averages of d_j (u.d) split by powers of zeta = z' - z.
        const cdouble xx = rho * rho * (a(0, 0) / 2.0 + (a(0, 2) + a(0, -2)) / 4.0 + I * (a(1, 2) - a(1, -2)) / 4.0);
        const cdouble xz = rho * (a(2, 1) + a(2, -1)) / 2.0;
        const cdouble yy = rho * rho * (I * (a(0, 2) - a(0, -2)) / 4.0 + a(1, 0) / 2.0 - (a(1, 2) + a(1, -2)) / 4.0);
        const cdouble yz = rho * I * (a(2, 1) - a(2, -1)) / 2.0;
        const cdouble zz1 = rho * ((a(0, 1) + a(0, -1)) / 2.0 + I * (a(1, 1) - a(1, -1)) / 2.0);
        const cdouble zz2 = a(2, 0);
        for (std::size_t k = 0; k < zr.size(); ++k) {
            const double zeta = zr.nodes[k] - z_r;
            const double r2 = rho * rho + zeta * zeta;
            const double ir3 = 1.0 / (r2 * std::sqrt(r2));
            const double ir5 = ir3 / r2;
            const double w = constants::two_pi * rho * rr.weights[i] * zr.weights[k];
            acc[0] += w * (3.0 * (xx + zeta * xz) * ir5 - a(0, 0) * ir3);
            acc[1] += w * (3.0 * (yy + zeta * yz) * ir5 - a(1, 0) * ir3);
            acc[2] += w * (3.0 * zeta * (zz1 + zeta * zz2) * ir5 - a(2, 0) * ir3);
        }
    }
    return acc;
}

double field_prefactor(const bp::SkyrmionConfig& cfg, const bp::Material& mat, double r_c) {
    return constants::vacuum_permeability * mat.saturation_magnetization / (4.0 * constants::pi) * r_c /
           cfg.geometry.radius;
}

CVec3 scaled(const CVec3& v, double s) { return {s * v[0], s * v[1], s * v[2]}; }

}  // namespace

void QuadratureSpec::validate() const {
    require(radial_points >= 8 && azimuthal_points >= 8 && thickness_points >= 2,
            "quadrature needs >= 8 radial, >= 8 azimuthal and >= 2 thickness nodes");
    require(loop_radial_points >= 2 && loop_azimuthal_points >= 4, "loop quadrature counts too small");
    require(azimuthal_points % 2 == 0 && loop_azimuthal_points % 2 == 0, "azimuthal counts must be even");
    require(std::isfinite(relative_tolerance) && relative_tolerance > 0.0 && relative_tolerance <= 0.1,
            "relative tolerance must lie in (0, 0.1]");
    require(max_refinements >= 1 && max_refinements <= 8, "max_refinements must lie in [1, 8]");
}

QuadratureSpec QuadratureSpec::doubled() const {
    QuadratureSpec q = *this;
    q.radial_points *= 2;
    q.azimuthal_points *= 2;
    q.thickness_points *= 2;
    q.loop_radial_points *= 2;
    q.loop_azimuthal_points *= 2;
    return q;
}

CVec3 reduced_field(const Vec3& p, const bp::SkyrmionConfig& cfg, const QuadratureSpec& quad) {
    cfg.validate();
    check_outside(p, cfg);
    return run_scheme(quad, [&](const QuadratureSpec& q) { return reduced_field_grid(p, cfg, q); });
}

CVec3 field_mode_at(const Vec3& point, const bp::SkyrmionConfig& cfg, const bp::Material& mat, double r_c,
                    const QuadratureSpec& quad) {
    mat.validate();
    require(std::isfinite(r_c) && r_c > 0.0, "gyration radius must be positive");
    const double R = cfg.geometry.radius;
    require(R > 0.0, "disk radius must be positive");
    const Vec3 pr{point[0] / R, point[1] / R, point[2] / R};
    return scaled(reduced_field(pr, cfg, quad), field_prefactor(cfg, mat, r_c));
}

CVec3 on_axis_reduced(double z_r, const bp::SkyrmionConfig& cfg, const QuadratureSpec& quad) {
    cfg.validate();
    const double half_h = 0.5 * cfg.geometry.thickness / cfg.geometry.radius;
    if (!(std::abs(z_r) > half_h)) fail(ErrorCode::SingularPoint, "on-axis point lies inside the disk volume");
    return run_scheme(quad, [&](const QuadratureSpec& q) { return on_axis_grid(z_r, cfg, q); });
}

CVec3 on_axis_components(double z, const bp::SkyrmionConfig& cfg, const bp::Material& mat, double r_c,
                         const QuadratureSpec& quad) {
    mat.validate();
    require(std::isfinite(r_c) && r_c > 0.0, "gyration radius must be positive");
    require(cfg.geometry.radius > 0.0, "disk radius must be positive");
    return scaled(on_axis_reduced(z / cfg.geometry.radius, cfg, quad), field_prefactor(cfg, mat, r_c));
}

FluxAmplitude flux_amplitude(const SquidLoop& loop, const bp::SkyrmionConfig& cfg, const bp::Material& mat,
                             double r_c, const QuadratureSpec& quad) {
    cfg.validate();
    mat.validate();
    require(std::isfinite(r_c) && r_c > 0.0, "gyration radius must be positive");
    require(std::isfinite(loop.radius) && loop.radius > 0.0, "loop radius must be positive");
    const double R = cfg.geometry.radius;
    const double zc = loop.center[2] / R;
    if (!(std::abs(zc) > 0.5 * cfg.geometry.thickness / R))
        fail(ErrorCode::SingularPoint, "loop plane intersects the disk");
    const double xc = loop.center[0] / R, yc = loop.center[1] / R, a = loop.radius / R;

    const cdouble reduced = run_scheme(quad, [&](const QuadratureSpec& q) {
        const quad::Rule sr = quad::gauss_legendre(static_cast<std::size_t>(q.loop_radial_points), 0.0, a);
        const quad::Rule tr = quad::periodic_trapezoid(static_cast<std::size_t>(q.loop_azimuthal_points));
        cdouble sum = 0.0;
        for (std::size_t i = 0; i < sr.size(); ++i) {
            for (std::size_t j = 0; j < tr.size(); ++j) {
                const Vec3 p{xc + sr.nodes[i] * std::cos(tr.nodes[j]), yc + sr.nodes[i] * std::sin(tr.nodes[j]), zc};
                sum += sr.nodes[i] * sr.weights[i] * tr.weights[j] * reduced_bz_grid(p, cfg, q);
            }
        }
        return sum * (r_c / R);
    });

    FluxAmplitude out;
    out.reduced = reduced;
    out.magnitude = std::abs(reduced);
    out.phase = std::arg(reduced);
    out.flux_scale = constants::vacuum_permeability * mat.saturation_magnetization * R * R * out.magnitude /
                     (4.0 * constants::pi);
    return out;
}

}  // namespace skybus::stray
