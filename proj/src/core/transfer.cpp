#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

#include "dynamics.hpp"
#include "error.hpp"

namespace skybus::dynamics {

namespace {

Matrix product_state(int gm_levels, bool nv_excited, bool tr_excited) {
    const int dim = 4 * gm_levels;
    Matrix rho = Matrix::Zero(dim, dim);
    // Fock 0 with GM (x) NV (x) Tr ordering: index = 4 n + 2 nv + tr.
    const int idx = 2 * (nv_excited ? 1 : 0) + (tr_excited ? 1 : 0);
    rho(idx, idx) = 1.0;
    return rho;
}

struct Setup {
    Matrix H;
    std::vector<JumpOperator> jumps;
    Matrix rho0;
    std::vector<Observable> observables;
    bool regime_warning = false;
};

Setup full_setup(TransferKind kind, bool nv_first, const TripartiteModel& model, const HilbertSpec& spec) {
    Setup s;
    const Operators o = tripartite_operators(spec);
    if (kind == TransferKind::Coherent) {
        s.H = build_tripartite(model, spec, model.include_longitudinal ? 0.0 : model.omega_tr);
        s.jumps = tripartite_jumps(model, spec);
        s.regime_warning = effective_coherent(model).dispersive_warning;
    } else {
        s.H = build_driven_rotating(model, spec);
        if (model.gamma_gm > 0.0) s.jumps.push_back({o.a, model.gamma_gm, "gm_decay"});
        s.regime_warning = effective_dissipative(model).elimination_warning;
    }
    s.rho0 = product_state(spec.gm_cutoff, nv_first, !nv_first);
    s.observables = {{"nv", o.sp_nv * o.sm_nv}, {"tr", o.sp_tr * o.sm_tr}, {"gm", o.n}};
    return s;
}

Setup effective_setup(TransferKind kind, bool nv_first, const TripartiteModel& model) {
    Setup s;
    const Operators o = two_qubit_operators();
    Matrix gm_estimate;
    if (kind == TransferKind::Coherent) {
        const EffectiveCoherent e = effective_coherent(model);
        s.H = build_effective_coherent(e, model.omega_tr);
        s.jumps = effective_coherent_jumps(e);
        // a ~ -(Lambda_SN sigma_- / Delta_NV + Lambda_ST sigma_-^T / Delta_Tr)
        const Matrix x = model.lambda_sn / (model.omega_gm - model.omega_nv) * o.sm_nv +
                         model.lambda_st_t / (model.omega_gm - model.omega_tr) * o.sm_tr;
        gm_estimate = x.adjoint() * x;
        s.regime_warning = e.dispersive_warning;
    } else {
        const EffectiveDissipative e = effective_dissipative(model);
        s.H = build_effective_nt(e);
        const Matrix xi = xi_operator(e);
        if (e.gamma_nt > 0.0) s.jumps.push_back({xi, e.gamma_nt, "collective_decay"});
        gm_estimate = e.mode_occupation_factor * xi.adjoint() * xi;
        s.regime_warning = e.elimination_warning;
    }
    s.rho0 = product_state(1, nv_first, !nv_first);
    s.observables = {{"nv", o.sp_nv * o.sm_nv}, {"tr", o.sp_tr * o.sm_tr}, {"gm", gm_estimate}};
    return s;
}

}  // namespace

TransferResult transfer_experiment(TransferKind kind, Direction direction, const TripartiteModel& model,
                                   const HilbertSpec& spec, const std::vector<double>& times, Route route,
                                   const EvolveOptions& options) {
    model.validate();
    spec.validate();
    const bool nv_first = direction == Direction::NvToTr;
    const Setup s = route == Route::Full ? full_setup(kind, nv_first, model, spec) : effective_setup(kind, nv_first, model);
    const Evolution ev = evolve(s.H, s.jumps, s.rho0, times, s.observables, options);

    TransferResult r;
    r.kind = kind;
    r.direction = direction;
    r.route = route;
    r.times = ev.times;
    r.nv = ev.expectations[0];
    r.tr = ev.expectations[1];
    r.gm = ev.expectations[2];
    r.invariants = ev.invariants;
    r.regime_warning = s.regime_warning;
    const std::vector<double>& target = nv_first ? r.tr : r.nv;
    const auto it = std::max_element(target.begin(), target.end());
    r.peak_transfer = *it;
    r.peak_time = r.times[static_cast<std::size_t>(it - target.begin())];
    return r;
}

}  // namespace skybus::dynamics
