#include <doctest.h>

#include "error.hpp"
#include "fixtures.hpp"
#include "nv_coupling.hpp"
#include "quadrature.hpp"

using namespace skybus;
using namespace fixtures;

namespace {

// Azimuth-integrated on-axis bracket for the Bloch texture with P = -1,
// integrated over the thickness by brute force on a fine grid.
double f_sn_oracle(double c, double H, double h) {
    std::vector<double> edges{0.0, c / 4, c / 2, c, 2 * c, 4 * c};
    for (double e = 0.6; e <= 1.0 + 1e-12; e += 0.2) edges.push_back(e);
    const auto rho = quad::composite_gauss_legendre(edges, 40);
    const auto zz = quad::gauss_legendre(40, -h / 2, h / 2);
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < zz.size(); ++k)
        for (std::size_t i = 0; i < rho.size(); ++i) {
            const double p = rho.nodes[i], dz = zz.nodes[k] - H;
            const double r2 = p * p + dz * dz, r = std::sqrt(r2);
            const double r3 = r2 * r, r5 = r3 * r2, s = c * c + p * p;
            const std::complex<double> b(-3.0 / r5 * 2.0 * c * c * p * p / (s * s) * dz,
                                         3.0 / r5 * c * p * p / s - 2.0 / r3 * c * c * c / (s * s));
            acc += b * p * rho.weights[i] * zz.weights[k];
        }
    return std::abs(acc);
}

nv::NVCenter reference_nv() {
    nv::NVCenter n;
    n.standoff = 5 * nm;
    return n;
}

}  // namespace

TEST_CASE("NV qubit frequency follows the axial field") {
    nv::NVCenter n = reference_nv();
    CHECK(nv::nv_qubit_frequency(n) == doctest::Approx(2.87 * GHz).epsilon(1e-12));
    n.axial_field = 50e-3;
    CHECK(nv::nv_qubit_frequency(n) / GHz == doctest::Approx(2.87 - gamma_e * 50e-3 / two_pi / 1e9).epsilon(1e-9));
    CHECK(nv::nv_qubit_frequency(n) / GHz == doctest::Approx(1.4687).epsilon(1e-3));
    n.axial_field = 0.2;
    try {
        nv::nv_qubit_frequency(n);
        FAIL("expected NegativeFrequency");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NegativeFrequency);
    }
}

TEST_CASE("F_SN matches the independent bracket integral") {
    stray::QuadratureSpec q;
    for (double c : {0.1, 0.2, 0.3})
        for (double H : {0.075, 0.2, 0.5}) {
            const auto f = nv::f_sn_integral(c, H, 0.05, q);
            CHECK(f.modulus == doctest::Approx(f_sn_oracle(c, H, 0.05)).epsilon(1e-4));
        }
    // Frozen from the oracle: reference disk, d_G = 5 nm.
    CHECK(nv::f_sn_integral(0.1, 0.075, 0.05, q).modulus == doctest::Approx(2.91195).epsilon(1e-4));
}

TEST_CASE("in-plane couplings are a quarter period apart") {
    stray::QuadratureSpec q;
    const auto f = nv::f_sn_integral(0.1, 0.075, 0.05, q);
    CHECK(std::abs(std::remainder(f.phase_y - f.phase_x - pi / 2, two_pi)) < 1e-6);
    const auto g = nv::f_sn_integral(0.1, 0.075, 0.05, q, pi / 2, 1);
    CHECK(std::abs(std::remainder(g.phase_y - g.phase_x + pi / 2, two_pi)) < 1e-6);
    CHECK(g.modulus == doctest::Approx(f.modulus).epsilon(1e-9));
}

TEST_CASE("coupling decreases with standoff") {
    const auto cfg = reference_skyrmion();
    const auto mat = reference_material();
    stray::QuadratureSpec q;
    nv::NVCenter n = reference_nv();
    double prev = nv::lambda_sn(cfg, mat, n, q).lambda_sn;
    for (double d : {10.0, 20.0, 35.0, 50.0}) {
        n.standoff = d * nm;
        const double v = nv::lambda_sn(cfg, mat, n, q).lambda_sn;
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("coupling agrees with the general field route") {
    const auto cfg = reference_skyrmion();
    const auto mat = reference_material();
    stray::QuadratureSpec q;
    const auto res = nv::lambda_sn(cfg, mat, reference_nv(), q);
    const CVec3 b = stray::field_mode_at({0.0, 0.0, res.height}, cfg, mat, res.gyration_radius, q);
    CHECK(gamma_e * std::abs(b[0]) == doctest::Approx(res.lambda_sn).epsilon(2e-4));
    CHECK(gamma_e * std::abs(b[1]) == doctest::Approx(res.lambda_sn).epsilon(2e-4));
    CHECK(res.height == doctest::Approx(7.5 * nm));
}

TEST_CASE("coupling scales with magnetization at fixed gyration radius") {
    const auto cfg = reference_skyrmion();
    auto mat = reference_material();
    stray::QuadratureSpec q;
    const auto a = nv::lambda_sn(cfg, mat, reference_nv(), q);
    // r_c ~ 1 / M_S, so hold it fixed through the frequency prefactor.
    mat.saturation_magnetization *= 2.0;
    const auto b = nv::lambda_sn(cfg, mat, reference_nv(), q);
    CHECK(b.f_sn == doctest::Approx(a.f_sn).epsilon(1e-12));
    CHECK(b.lambda_sn / b.gyration_radius == doctest::Approx(2.0 * a.lambda_sn / a.gyration_radius).epsilon(1e-12));
}

TEST_CASE("reference coupling strength") {
    const auto res = nv::lambda_sn(reference_skyrmion(), reference_material(), reference_nv(), {});
    CHECK(res.gyration_radius == doctest::Approx(4.8838748e-11).epsilon(1e-6));
    const double expect = gamma_e * mu_0 * 1e6 * res.gyration_radius * 2.91195 / (4 * 100 * nm);
    CHECK(res.lambda_sn == doctest::Approx(expect).epsilon(1e-4));
    CHECK(res.lambda_sn / MHz == doctest::Approx(12.5).epsilon(0.1));
}

TEST_CASE("NV validation") {
    nv::NVCenter n;
    CHECK_THROWS_AS(nv::nv_qubit_frequency(n), Error);
    n = reference_nv();
    n.zero_field_splitting = -1.0;
    CHECK_THROWS_AS(nv::nv_qubit_frequency(n), Error);
}
