#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "skybus/skybus.h"

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double MHz = 2 * pi * 1e6;
constexpr double GHz = 2 * pi * 1e9;

skb_system* reference_system() {
    skb_material m;
    skb_skyrmion s;
    skb_material_default(&m);
    skb_skyrmion_default(&s);
    skb_system* sys = nullptr;
    REQUIRE(skb_system_create(&m, &s, &sys) == SKB_OK);
    return sys;
}

}  // namespace

TEST_CASE("version and status names") {
    CHECK(std::string(skb_version()) == "1.0.0");
    CHECK(std::string(skb_status_name(SKB_OK)) == "OK");
    CHECK(std::string(skb_status_name(SKB_ERR_SINGULAR_POINT)) == "SingularPoint");
    CHECK(std::string(skb_status_name(SKB_ERR_MULTI_PEAK)) == "MultiPeak");
    CHECK(std::string(skb_status_name(static_cast<skb_status>(42))) == "Unknown");
}

TEST_CASE("defaults") {
    skb_material m;
    skb_skyrmion s;
    skb_quadrature q;
    skb_nv nv;
    skb_evolve_options o;
    skb_material_default(&m);
    skb_skyrmion_default(&s);
    skb_quadrature_default(&q);
    skb_nv_default(&nv);
    skb_evolve_options_default(&o);
    CHECK(m.saturation_magnetization == 1e6);
    CHECK(s.reduced_radius == 0.1);
    CHECK(q.radial_points == 64);
    CHECK(q.azimuthal_points == 64);
    CHECK(q.thickness_points == 16);
    CHECK(q.relative_tolerance == 1e-4);
    CHECK(nv.zero_field_splitting == doctest::Approx(2.87 * GHz));
    CHECK(o.rel_tol > 0.0);
    skb_material_default(nullptr);
}

TEST_CASE("null arguments and last error") {
    skb_system* sys = nullptr;
    CHECK(skb_system_create(nullptr, nullptr, &sys) == SKB_ERR_INVALID_ARGUMENT);
    CHECK(sys == nullptr);
    CHECK(std::strstr(skb_last_error(), "null") != nullptr);
    double r = 0.0;
    CHECK(skb_gyration_radius(nullptr, &r) == SKB_ERR_INVALID_ARGUMENT);
    sys = reference_system();
    CHECK(skb_gyration_radius(sys, &r) == SKB_OK);
    CHECK(std::string(skb_last_error()).empty());
    CHECK(r == doctest::Approx(4.8838748e-11).epsilon(1e-6));
    skb_system_destroy(sys);
    skb_system_destroy(nullptr);
    CHECK(skb_experiment_size(nullptr) == 0);
}

TEST_CASE("invalid texture is rejected") {
    skb_material m;
    skb_skyrmion s;
    skb_material_default(&m);
    skb_skyrmion_default(&s);
    s.reduced_radius = 1.5;
    skb_system* sys = nullptr;
    CHECK(skb_system_create(&m, &s, &sys) == SKB_ERR_INVALID_ARGUMENT);
    CHECK(sys == nullptr);
    CHECK(std::strlen(skb_last_error()) > 0);
}

TEST_CASE("field, coupling and error statuses through the C surface") {
    skb_system* sys = reference_system();
    double r_c = 0.0;
    REQUIRE(skb_gyration_radius(sys, &r_c) == SKB_OK);
    skb_cvec3 b;
    CHECK(skb_field_mode_at(sys, {10e-9, 0.0, 0.0}, r_c, nullptr, &b) == SKB_ERR_SINGULAR_POINT);
    CHECK(skb_on_axis_components(sys, 7.5e-9, r_c, nullptr, &b) == SKB_OK);
    CHECK(b.z.re == 0.0);

    skb_nv nv;
    skb_nv_default(&nv);
    skb_nv_coupling c;
    REQUIRE(skb_lambda_sn(sys, &nv, nullptr, &c) == SKB_OK);
    CHECK(c.lambda_sn / MHz == doctest::Approx(12.52).epsilon(1e-3));
    nv.axial_field = 1.0;
    double w = 0.0;
    CHECK(skb_nv_qubit_frequency(&nv, &w) == SKB_ERR_NEGATIVE_FREQUENCY);

    skb_transmon t{50 * GHz, 0.2 * GHz, 0.06, pi / 2};
    skb_transmon_derived d;
    REQUIRE(skb_regime_diagnostics(&t, &d) == SKB_OK);
    CHECK(d.eta_t == doctest::Approx(15.0));
    skb_flux f{{1.0946854e-4, 0.0}, 1.0946854e-4, 0.0, 1.25663706212e-6 * 1e6 * 1e-14 * 1.0946854e-4 / (4 * pi)};
    skb_transmon_coupling tc;
    REQUIRE(skb_coupling_strengths(&t, &f, &tc) == SKB_OK);
    CHECK(tc.transverse_corrected / MHz == doctest::Approx(4.1075).epsilon(1e-3));
    skb_system_destroy(sys);
}

TEST_CASE("transfer experiment handle") {
    skb_tripartite m{};
    m.omega_nv = m.omega_tr = 2.87 * GHz;
    m.lambda_sn = m.lambda_st_t = 12.5 * MHz;
    m.omega_gm = m.omega_nv + 10 * m.lambda_sn;
    double comm = -1.0, herm = -1.0;
    REQUIRE(skb_tripartite_checks(&m, 6, &comm, &herm) == SKB_OK);
    CHECK(comm < 1e-10 * m.omega_gm);
    CHECK(herm == 0.0);

    std::vector<double> t(101);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = 400e-9 * i / 100.0;
    skb_experiment* e = nullptr;
    REQUIRE(skb_transfer_run(&m, 4, SKB_TRANSFER_COHERENT, SKB_NV_TO_TR, SKB_ROUTE_EFFECTIVE, t.data(), t.size(),
                             nullptr, &e) == SKB_OK);
    REQUIRE(skb_experiment_size(e) == t.size());
    std::vector<double> nv(t.size()), tr(t.size());
    CHECK(skb_experiment_populations(e, nv.data(), tr.data(), nullptr) == SKB_OK);
    skb_transfer_summary s;
    CHECK(skb_experiment_summary(e, &s) == SKB_OK);
    CHECK(s.invariants_ok == 1);
    CHECK(s.peak_transfer > 0.85);
    CHECK(nv.front() == doctest::Approx(1.0));
    skb_experiment_destroy(e);

    m.n_drives = 2;
    m.drive_amplitude[0] = 50 * MHz;
    m.drive_frequency[0] = 2.87 * GHz;
    m.drive_frequency[1] = 2.0 * GHz;
    skb_effective_dissipative ed;
    CHECK(skb_effective_dissipative_compute(&m, &ed) == SKB_ERR_DRIVE_CONDITION);
    m.n_drives = 1;
    CHECK(skb_effective_dissipative_compute(&m, &ed) == SKB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("Thiele handles and spectrum statuses") {
    skb_thiele p{1.0, 0.0, 4.0 * pi * pi * 100.0, 0.0};
    const double x0[2] = {1.0, 0.0}, v0[2] = {0.0, 0.0};
    std::vector<double> t(2048);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = 1e-3 * static_cast<double>(i);
    skb_trajectory* tr = nullptr;
    REQUIRE(skb_thiele_integrate(&p, nullptr, x0, v0, t.data(), t.size(), 4, &tr) == SKB_OK);
    CHECK(skb_trajectory_size(tr) == t.size());
    std::vector<double> x(t.size());
    CHECK(skb_trajectory_data(tr, nullptr, x.data(), nullptr, nullptr, nullptr) == SKB_OK);
    CHECK(x[0] == 1.0);
    skb_spectrum* s = nullptr;
    REQUIRE(skb_spectrum_compute(tr, SKB_WINDOW_HANN, &s) == SKB_OK);
    skb_resonance r;
    REQUIRE(skb_spectrum_resonance(s, &r) == SKB_OK);
    CHECK(std::abs(r.f_peak - 10.0) < 1.0 / 2.048);
    skb_spectrum_destroy(s);
    skb_trajectory_destroy(tr);

    // Two comparable branches give competing peaks.
    skb_thiele q{1.0, 0.5, 400.0, 0.0};
    std::vector<double> t2(16384);
    for (std::size_t i = 0; i < t2.size(); ++i) t2[i] = 2e-3 * static_cast<double>(i);
    REQUIRE(skb_thiele_integrate(&q, nullptr, x0, v0, t2.data(), t2.size(), 4, &tr) == SKB_OK);
    REQUIRE(skb_spectrum_compute(tr, SKB_WINDOW_HANN, &s) == SKB_OK);
    CHECK(skb_spectrum_resonance(s, &r) == SKB_ERR_MULTI_PEAK);
    skb_spectrum_destroy(s);
    skb_trajectory_destroy(tr);

    CHECK(skb_thiele_integrate(&p, nullptr, x0, v0, t.data(), t.size(), 0, &tr) == SKB_ERR_INVALID_ARGUMENT);
    t[5] = t[4];
    CHECK(skb_thiele_integrate(&p, nullptr, x0, v0, t.data(), t.size(), 4, &tr) == SKB_ERR_INVALID_ARGUMENT);
}
