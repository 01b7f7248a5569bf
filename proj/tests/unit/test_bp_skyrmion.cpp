#include <doctest.h>

#include <random>

#include "bp_skyrmion.hpp"
#include "error.hpp"
#include "fixtures.hpp"
#include "quadrature.hpp"

using namespace skybus;
using namespace fixtures;

namespace {

double dot_abs(const Vec3& m, const CVec3& d) {
    return std::abs(m[0] * d[0] + m[1] * d[1] + m[2] * d[2]);
}

double cnorm(const CVec3& d) { return std::sqrt(std::norm(d[0]) + std::norm(d[1]) + std::norm(d[2])); }

}  // namespace

TEST_CASE("magnetization has unit length on a 101 x 101 grid") {
    const auto cfg = reference_skyrmion();
    const double R = cfg.geometry.radius;
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i)
        for (int j = 0; j <= 100; ++j) {
            const Vec3 m = bp::magnetization(-R + 0.02 * R * i, -R + 0.02 * R * j, cfg);
            worst = std::max(worst, std::abs(std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]) - 1.0));
        }
    CHECK(worst < 1e-12);
}

TEST_CASE("magnetization at the core and on the skyrmion radius") {
    const auto cfg = reference_skyrmion();
    const Vec3 core = bp::magnetization(0.0, 0.0, cfg);
    CHECK(std::abs(core[0]) < 1e-15);
    CHECK(std::abs(core[1]) < 1e-15);
    CHECK(core[2] == doctest::Approx(-1.0));
    const Vec3 rim = bp::magnetization(cfg.skyrmion_radius(), 0.0, cfg);
    CHECK(std::abs(rim[0]) < 1e-15);
    CHECK(rim[1] == doctest::Approx(1.0));
    CHECK(std::abs(rim[2]) < 1e-15);
}

TEST_CASE("mode function at the origin") {
    const auto cfg = reference_skyrmion();
    const double r_c = 0.05 * nm;
    const CVec3 d = bp::mode_function(0.0, 0.0, cfg, r_c);
    const double s = r_c / cfg.skyrmion_radius();
    CHECK(std::abs(d[0] - cdouble(0.0, s)) < 1e-12 * s);
    CHECK(std::abs(d[1] - cdouble(-s, 0.0)) < 1e-12 * s);
    CHECK(std::abs(d[2]) < 1e-12 * s);
}

TEST_CASE("mode function is transverse to the texture") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int polarity : {-1, 1}) {
        auto cfg = reference_skyrmion();
        cfg.polarity = polarity;
        const double R = cfg.geometry.radius;
        for (int i = 0; i < 100; ++i) {
            const double x = u(rng) * R, y = u(rng) * R;
            const CVec3 d = bp::mode_function(x, y, cfg, 0.05 * nm);
            CHECK(dot_abs(bp::magnetization(x, y, cfg), d) < 1e-12 * cnorm(d));
        }
    }
}

TEST_CASE("|delta m_z| depends on rho only") {
    const auto cfg = reference_skyrmion();
    const double R = cfg.geometry.radius;
    for (double rho : {0.03, 0.1, 0.4, 0.9}) {
        const double ref = std::abs(bp::mode_function(rho * R, 0.0, cfg, 0.05 * nm)[2]);
        for (double phi : {0.3, 1.7, 2.9, 4.4}) {
            const double v = std::abs(bp::mode_function(rho * R * std::cos(phi), rho * R * std::sin(phi), cfg, 0.05 * nm)[2]);
            CHECK(v == doctest::Approx(ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("mode function equals the finite-difference displacement derivative") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    for (int polarity : {-1, 1}) {
        for (double phase : {0.0, M_PI / 2, 1.1}) {
            auto cfg = reference_skyrmion();
            cfg.polarity = polarity;
            cfg.phase = phase;
            cfg.chirality = std::sin(phase) < 0.0 ? -1 : 1;
            const double R = cfg.geometry.radius, h = 1e-4 * R, r_c = 0.05 * nm;
            for (int i = 0; i < 30; ++i) {
                const double x = u(rng) * R, y = u(rng) * R;
                const Vec3 xp = bp::magnetization(x + h, y, cfg), xm = bp::magnetization(x - h, y, cfg);
                const Vec3 yp = bp::magnetization(x, y + h, cfg), ym = bp::magnetization(x, y - h, cfg);
                CVec3 fd;
                for (int j = 0; j < 3; ++j) {
                    const double dx = (xp[j] - xm[j]) / (2 * h), dy = (yp[j] - ym[j]) / (2 * h);
                    fd[j] = -0.5 * r_c * cdouble(dx, -double(polarity) * dy);
                }
                const CVec3 d = bp::mode_function(x, y, cfg, r_c);
                const double err = std::sqrt(std::norm(d[0] - fd[0]) + std::norm(d[1] - fd[1]) + std::norm(d[2] - fd[2]));
                CHECK(err < 1e-5 * cnorm(d));
            }
        }
    }
}

TEST_CASE("gyration radius matches the closed form and the half-angstrom scale") {
    const auto cfg = reference_skyrmion();
    const auto mat = reference_material();
    const double R = cfg.geometry.radius, Rs = cfg.skyrmion_radius(), h = cfg.geometry.thickness;
    const double oracle = std::sqrt(2.0 * 2.0 * mu_B * (R * R + Rs * Rs) / (pi * h * R * R * 1e6));
    const double r_c = bp::gyration_radius(cfg, mat);
    CHECK(r_c == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(r_c == doctest::Approx(0.5e-10).epsilon(0.05));

    auto thick = cfg;
    thick.geometry.thickness *= 4.0;
    CHECK(bp::gyration_radius(thick, mat) == doctest::Approx(0.5 * r_c).epsilon(1e-12));

    auto big = cfg, tiny = cfg;
    big.reduced_radius = 1.0 - 1e-12;
    tiny.reduced_radius = 1e-9;
    CHECK(bp::gyration_radius(big, mat) / bp::gyration_radius(tiny, mat) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("spin-wave amplitude is normalized over the disk volume") {
    const auto cfg = reference_skyrmion();
    const auto mat = reference_material();
    const double r_c = bp::gyration_radius(cfg, mat);
    const double R = cfg.geometry.radius;
    // |psi|^2 is radial; integrate on panels refined around the core.
    const auto rho = quad::composite_gauss_legendre({0.0, 0.05, 0.1, 0.2, 0.4, 0.7, 1.0}, 24);
    double total = 0.0;
    for (std::size_t i = 0; i < rho.size(); ++i) {
        const double r = rho.nodes[i] * R;
        total += rho.weights[i] * R * 2.0 * pi * r * std::norm(bp::spinwave_amplitude(r, 0.0, cfg, mat, r_c));
    }
    CHECK(total * cfg.geometry.thickness == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("spin-wave amplitude profile and scaling") {
    const auto cfg = reference_skyrmion();
    const auto mat = reference_material();
    const double r_c = bp::gyration_radius(cfg, mat);
    const double Rs = cfg.skyrmion_radius();
    const double at0 = std::abs(bp::spinwave_amplitude(0.0, 0.0, cfg, mat, r_c));
    CHECK(at0 > 0.0);
    for (double rho : {0.5, 1.0, 3.0, 8.0}) {
        const double v = std::abs(bp::spinwave_amplitude(rho * Rs * 0.6, rho * Rs * 0.8, cfg, mat, r_c));
        CHECK(v / at0 == doctest::Approx(Rs * Rs / (Rs * Rs + rho * rho * Rs * Rs)).epsilon(1e-12));
        CHECK(std::abs(bp::spinwave_amplitude(rho * Rs, 0.0, cfg, mat, 2.0 * r_c)) ==
              doctest::Approx(2.0 * std::abs(bp::spinwave_amplitude(rho * Rs, 0.0, cfg, mat, r_c))));
    }
}

TEST_CASE("gyration frequencies") {
    const double M = 5e-23, k = 1e-3;
    SUBCASE("no gyrocoupling gives a degenerate oscillator") {
        const auto f = bp::gyration_frequencies({M, 0.0, k});
        CHECK(f.omega_cw == doctest::Approx(std::sqrt(k / M)));
        CHECK(f.omega_ccw == doctest::Approx(std::sqrt(k / M)));
    }
    SUBCASE("splitting equals |G| / M") {
        const double G = bp::gyrocoupling(5 * nm, 1e6, -1);
        CHECK(G < 0.0);
        CHECK(G == doctest::Approx(4 * pi * 5 * nm * 1e6 * -1 / gamma_e));
        const auto f = bp::gyration_frequencies({M, G, k});
        CHECK(f.omega_ccw - f.omega_cw == doctest::Approx(std::abs(G) / M));
        CHECK(f.omega_cw < f.omega_ccw);
        CHECK(f.omega_cw >= 0.0);
    }
    SUBCASE("zero stiffness") {
        const double G = -3e-13;
        const auto f = bp::gyration_frequencies({M, G, 0.0});
        CHECK(std::abs(f.omega_cw) < 1e-9 * std::abs(G) / M);
        CHECK(f.omega_ccw == doctest::Approx(std::abs(G) / M));
    }
    SUBCASE("invalid inputs") {
        CHECK_THROWS_AS(bp::gyration_frequencies({0.0, 0.0, k}), Error);
        CHECK_THROWS_AS(bp::gyration_frequencies({M, 0.0, -k}), Error);
    }
}

TEST_CASE("configuration validation") {
    auto cfg = reference_skyrmion();
    cfg.reduced_radius = 1.0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = reference_skyrmion();
    cfg.polarity = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg = reference_skyrmion();
    cfg.geometry.thickness = 20 * nm;
    CHECK(cfg.thin_disk_warning());
    CHECK_FALSE(reference_skyrmion().thin_disk_warning());
    CHECK_THROWS_AS(bp::Material({-1.0, 2.0, 0.0}).validate(), Error);
}
