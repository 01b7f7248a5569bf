#include <cmath>
#include <complex>
#include <string>
#include <unsupported/Eigen/KroneckerProduct>

#include "dynamics.hpp"
#include "error.hpp"

namespace skybus::dynamics {

namespace {

using cd = std::complex<double>;

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

Matrix qubit_lower() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

Matrix qubit_z() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    return m;
}

Matrix mode_lower(int n) {
    Matrix m = Matrix::Zero(n, n);
    for (int k = 1; k < n; ++k) m(k - 1, k) = std::sqrt(static_cast<double>(k));
    return m;
}

Matrix kron3(const Matrix& a, const Matrix& b, const Matrix& c) {
    return Eigen::kroneckerProduct(a, Matrix(Eigen::kroneckerProduct(b, c))).eval();
}

void check_drive_condition(const TripartiteModel& m) {
    require(m.drives.size() == 2, "the driven frame needs exactly two drives");
    const Drive& d1 = m.drives[0];
    const Drive& d2 = m.drives[1];
    const double mismatch = std::abs(d1.frequency - d2.frequency - 2.0 * d1.amplitude);
    const double scale = std::max({std::abs(d1.frequency), std::abs(d2.frequency), std::abs(2.0 * d1.amplitude)});
    if (mismatch > 1e-9 * scale)
        fail(ErrorCode::DriveCondition, "drives violate omega_1 - omega_2 = 2 Omega_1 (mismatch " +
                                            std::to_string(mismatch) + " rad/s)");
}

}  // namespace

void TripartiteModel::validate() const {
    require(std::isfinite(omega_gm) && std::isfinite(omega_nv) && std::isfinite(omega_tr),
            "model frequencies must be finite");
    require(finite_nonneg(lambda_sn) && finite_nonneg(lambda_st_t) && finite_nonneg(lambda_st_l),
            "couplings must be finite and non-negative");
    require(finite_nonneg(gamma_gm) && finite_nonneg(gamma_nv_dc) && finite_nonneg(gamma_nv_dp) &&
                finite_nonneg(gamma_tr_dc) && finite_nonneg(gamma_tr_dp),
            "rates must be finite and non-negative");
    for (const Drive& d : drives)
        require(std::isfinite(d.amplitude) && std::isfinite(d.frequency), "drive parameters must be finite");
}

void HilbertSpec::validate() const {
    require(gm_cutoff >= 2 && gm_cutoff <= 64, "gyration-mode cutoff must lie in [2, 64]");
}

Operators tripartite_operators(const HilbertSpec& spec) {
    spec.validate();
    const int n = spec.gm_cutoff;
    const Matrix i2 = Matrix::Identity(2, 2), in = Matrix::Identity(n, n);
    const Matrix a = mode_lower(n), sm = qubit_lower(), sz = qubit_z();
    Operators o;
    o.id = Matrix::Identity(4 * n, 4 * n);
    o.a = kron3(a, i2, i2);
    o.adag = o.a.adjoint();
    o.n = o.adag * o.a;
    o.sm_nv = kron3(in, sm, i2);
    o.sp_nv = o.sm_nv.adjoint();
    o.sz_nv = kron3(in, sz, i2);
    o.sm_tr = kron3(in, i2, sm);
    o.sp_tr = o.sm_tr.adjoint();
    o.sz_tr = kron3(in, i2, sz);
    return o;
}

Operators two_qubit_operators() {
    const Matrix i2 = Matrix::Identity(2, 2);
    const Matrix sm = qubit_lower(), sz = qubit_z();
    Operators o;
    o.id = Matrix::Identity(4, 4);
    o.a = Matrix::Zero(4, 4);
    o.adag = o.a;
    o.n = o.a;
    o.sm_nv = Eigen::kroneckerProduct(sm, i2).eval();
    o.sp_nv = o.sm_nv.adjoint();
    o.sz_nv = Eigen::kroneckerProduct(sz, i2).eval();
    o.sm_tr = Eigen::kroneckerProduct(i2, sm).eval();
    o.sp_tr = o.sm_tr.adjoint();
    o.sz_tr = Eigen::kroneckerProduct(i2, sz).eval();
    return o;
}

Matrix excitation_number(const HilbertSpec& spec) {
    const Operators o = tripartite_operators(spec);
    return o.n + o.sp_nv * o.sm_nv + o.sp_tr * o.sm_tr;
}

Matrix build_tripartite(const TripartiteModel& m, const HilbertSpec& spec, double frame_frequency) {
    m.validate();
    require(std::isfinite(frame_frequency), "frame frequency must be finite");
    require(!(m.include_longitudinal && frame_frequency != 0.0),
            "the longitudinal term does not conserve excitations; use the lab frame");
    const Operators o = tripartite_operators(spec);
    Matrix H = m.omega_gm * o.n + 0.5 * m.omega_nv * o.sz_nv + 0.5 * m.omega_tr * o.sz_tr;
    H += m.lambda_sn * (o.a * o.sp_nv + o.adag * o.sm_nv);
    H += m.lambda_st_t * (o.a * o.sp_tr + o.adag * o.sm_tr);
    if (m.include_longitudinal) H -= m.lambda_st_l * (o.a + o.adag) * (o.sp_tr * o.sm_tr);
    if (frame_frequency != 0.0) H -= frame_frequency * (o.n + o.sp_nv * o.sm_nv + o.sp_tr * o.sm_tr);
    return H;
}

Matrix build_driven_rotating(const TripartiteModel& m, const HilbertSpec& spec) {
    m.validate();
    check_drive_condition(m);
    const Operators o = tripartite_operators(spec);
    const double w1 = m.drives[0].frequency;
    const double omega2 = m.drives[1].amplitude;
    const double reduced = 0.5 * m.lambda_sn;
    Matrix H = 0.5 * omega2 * o.sz_nv + 0.5 * (m.omega_tr - w1) * o.sz_tr + (m.omega_gm - w1) * o.n;
    H += reduced * (o.a + o.adag) * (o.sp_nv + o.sm_nv);
    H += m.lambda_st_t * (o.a * o.sp_tr + o.adag * o.sm_tr);
    return H;
}

std::vector<JumpOperator> tripartite_jumps(const TripartiteModel& m, const HilbertSpec& spec) {
    m.validate();
    const Operators o = tripartite_operators(spec);
    std::vector<JumpOperator> j;
    if (m.gamma_gm > 0.0) j.push_back({o.a, m.gamma_gm, "gm_decay"});
    if (m.gamma_nv_dc > 0.0) j.push_back({o.sm_nv, m.gamma_nv_dc, "nv_decay"});
    if (m.gamma_nv_dp > 0.0) j.push_back({o.sz_nv, 0.5 * m.gamma_nv_dp, "nv_dephasing"});
    if (m.gamma_tr_dc > 0.0) j.push_back({o.sm_tr, m.gamma_tr_dc, "tr_decay"});
    if (m.gamma_tr_dp > 0.0) j.push_back({o.sz_tr, 0.5 * m.gamma_tr_dp, "tr_dephasing"});
    return j;
}

EffectiveCoherent effective_coherent(const TripartiteModel& m) {
    m.validate();
    const double d_nv = m.omega_gm - m.omega_nv;
    const double d_tr = m.omega_gm - m.omega_tr;
    require(d_nv != 0.0 && d_tr != 0.0, "dispersive elimination needs a detuned gyration mode");
    EffectiveCoherent e;
    e.alpha = m.lambda_sn / std::abs(d_nv);
    e.beta = m.lambda_st_t / std::abs(d_tr);
    e.lambda_nt_signed = -0.5 * m.lambda_sn * m.lambda_st_t * (1.0 / d_nv + 1.0 / d_tr);
    e.lambda_nt = std::abs(e.lambda_nt_signed);
    e.omega_nv = m.omega_nv - e.alpha * e.alpha * d_nv;
    e.omega_tr = m.omega_tr - e.beta * e.beta * d_tr;
    e.gamma_nv = m.gamma_nv_dc + e.alpha * e.alpha * m.gamma_gm;
    e.gamma_tr = m.gamma_tr_dc + e.beta * e.beta * m.gamma_gm;
    e.gamma_nv_dp = m.gamma_nv_dp;
    e.gamma_tr_dp = m.gamma_tr_dp;
    e.dispersive_warning = std::max(e.alpha, e.beta) > 0.1 * (1.0 + 1e-12);
    return e;
}

Matrix build_effective_coherent(const EffectiveCoherent& e, double frame_frequency) {
    const Operators o = two_qubit_operators();
    Matrix H = 0.5 * e.omega_nv * o.sz_nv + 0.5 * e.omega_tr * o.sz_tr;
    H += e.lambda_nt_signed * (o.sp_nv * o.sm_tr + o.sm_nv * o.sp_tr);
    if (frame_frequency != 0.0) H -= frame_frequency * (o.sp_nv * o.sm_nv + o.sp_tr * o.sm_tr);
    return H;
}

std::vector<JumpOperator> effective_coherent_jumps(const EffectiveCoherent& e) {
    const Operators o = two_qubit_operators();
    std::vector<JumpOperator> j;
    if (e.gamma_nv > 0.0) j.push_back({o.sm_nv, e.gamma_nv, "nv_decay"});
    if (e.gamma_nv_dp > 0.0) j.push_back({o.sz_nv, 0.5 * e.gamma_nv_dp, "nv_dephasing"});
    if (e.gamma_tr > 0.0) j.push_back({o.sm_tr, e.gamma_tr, "tr_decay"});
    if (e.gamma_tr_dp > 0.0) j.push_back({o.sz_tr, 0.5 * e.gamma_tr_dp, "tr_dephasing"});
    return j;
}

EffectiveDissipative effective_dissipative(const TripartiteModel& m) {
    m.validate();
    check_drive_condition(m);
    EffectiveDissipative e;
    const double w1 = m.drives[0].frequency;
    e.reduced_lambda = 0.5 * m.lambda_sn;
    require(e.reduced_lambda > 0.0, "dissipative elimination needs a non-zero NV coupling");
    e.eta = m.lambda_st_t / e.reduced_lambda;
    e.delta_gm = m.omega_gm - w1;
    e.delta_tr = m.omega_tr - w1;
    const double den = e.delta_gm * e.delta_gm + 0.25 * m.gamma_gm * m.gamma_gm;
    require(den > 0.0, "dissipative elimination needs gamma_GM or a detuning");
    e.mode_occupation_factor = e.reduced_lambda * e.reduced_lambda / den;
    e.gamma_nt = m.gamma_gm * e.mode_occupation_factor;
    e.lambda_nt = e.eta * e.delta_gm * e.mode_occupation_factor;
    e.omega_nv = m.drives[1].amplitude;
    e.omega_tr = e.delta_tr - e.eta * e.eta * e.delta_gm * e.mode_occupation_factor;
    e.elimination_warning = m.gamma_gm < 5.0 * std::max(e.reduced_lambda, m.lambda_st_t);
    return e;
}

Matrix build_effective_nt(const EffectiveDissipative& e) {
    const Operators o = two_qubit_operators();
    const Matrix sx_nv = o.sp_nv + o.sm_nv, sx_tr = o.sp_tr + o.sm_tr;
    return 0.5 * e.omega_nv * o.sz_nv + 0.5 * e.omega_tr * o.sz_tr - e.lambda_nt * sx_nv * sx_tr;
}

Matrix xi_operator(const EffectiveDissipative& e) {
    const Operators o = two_qubit_operators();
    return o.sp_nv + o.sm_nv + e.eta * o.sm_tr;
}

}  // namespace skybus::dynamics
