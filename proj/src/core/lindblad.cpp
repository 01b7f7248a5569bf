#include <Eigen/Sparse>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <complex>
#include <functional>
#include <string>

#include "dynamics.hpp"
#include "error.hpp"

namespace skybus::dynamics {

namespace {

using cd = std::complex<double>;
using State = std::vector<cd>;
namespace ode = boost::numeric::odeint;

using Sparse = Eigen::SparseMatrix<cd>;

// Model operators are sparse; products with the dense state use sparse-dense kernels.
struct Generator {
    Sparse heff;  // H - i/2 sum gamma L^dag L
    std::vector<Sparse> ops;
    std::vector<Sparse> ops_dag;
    std::vector<double> rates;
    Eigen::Index dim = 0;
    mutable Matrix work, work2;

    Generator(const Matrix& H, const std::vector<JumpOperator>& jumps) : dim(H.rows()) {
        // A multiple of the identity drops out of the commutator.
        Matrix h = H;
        h.diagonal().array() -= H.trace() / static_cast<double>(dim);
        for (const auto& j : jumps) {
            require(j.op.rows() == dim && j.op.cols() == dim, "jump operator '" + j.label + "' has the wrong shape");
            require(std::isfinite(j.rate) && j.rate >= 0.0, "jump rate '" + j.label + "' must be non-negative");
            if (j.rate == 0.0) continue;
            ops.push_back(j.op.sparseView());
            ops_dag.push_back(j.op.adjoint().sparseView());
            rates.push_back(j.rate);
            h -= cd(0.0, 0.5 * j.rate) * (j.op.adjoint() * j.op);
        }
        heff = h.sparseView();
        work.resize(dim, dim);
        work2.resize(dim, dim);
    }

    // Uses rho = rho^dag: rho Heff^dag = (Heff rho)^dag.
    void apply(const cd* in, cd* out) const {
        Eigen::Map<const Matrix> rho(in, dim, dim);
        Eigen::Map<Matrix> d(out, dim, dim);
        work.noalias() = heff * rho;
        work *= cd(0.0, -1.0);
        d = work + work.adjoint();
        for (std::size_t k = 0; k < ops.size(); ++k) {
            work.noalias() = ops[k] * rho;
            work2.noalias() = work * ops_dag[k];
            d += rates[k] * work2;
        }
    }

    void operator()(const State& x, State& dxdt, double /*t*/) const { apply(x.data(), dxdt.data()); }

    double norm_scale() const {
        double s = 0.0;
        for (Eigen::Index c = 0; c < heff.outerSize(); ++c)
            for (Sparse::InnerIterator it(heff, c); it; ++it) s = std::max(s, std::abs(it.value()));
        return s * static_cast<double>(dim);
    }
};

double hermiticity_error(const Matrix& rho) { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }

}  // namespace

void validate_density(const Matrix& rho) {
    require(rho.rows() == rho.cols() && rho.rows() > 0, "density matrix must be square");
    require(rho.allFinite(), "density matrix must be finite");
    require(hermiticity_error(rho) <= 1e-12, "density matrix must be Hermitian");
    require(std::abs(rho.trace() - cd(1.0, 0.0)) <= 1e-9, "density matrix must have unit trace");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -1e-9, "density matrix must be positive semidefinite");
}

Matrix lindblad_rhs(const Matrix& H, const std::vector<JumpOperator>& jumps, const Matrix& rho) {
    require(H.rows() == H.cols() && H.rows() == rho.rows() && rho.rows() == rho.cols(),
            "Hamiltonian and state shapes differ");
    const Generator g(H, jumps);
    Matrix out(rho.rows(), rho.cols());
    const Matrix herm = 0.5 * (rho + rho.adjoint());
    g.apply(herm.data(), out.data());
    return out;
}

Evolution evolve(const Matrix& H, const std::vector<JumpOperator>& jumps, const Matrix& rho0,
                 const std::vector<double>& times, const std::vector<Observable>& observables,
                 const EvolveOptions& options) {
    require(H.rows() == H.cols(), "Hamiltonian must be square");
    require(H.allFinite(), "Hamiltonian must be finite");
    require(hermiticity_error(H) <= 1e-9 * std::max(1.0, H.cwiseAbs().maxCoeff()), "Hamiltonian must be Hermitian");
    validate_density(rho0);
    require(rho0.rows() == H.rows(), "state and Hamiltonian dimensions differ");
    require(!times.empty(), "time grid must not be empty");
    for (std::size_t i = 0; i < times.size(); ++i) {
        require(std::isfinite(times[i]), "time grid must be finite");
        if (i > 0) require(times[i] > times[i - 1], "time grid must be strictly increasing");
    }
    require(options.rel_tol > 0.0 && options.abs_tol > 0.0, "integrator tolerances must be positive");
    for (const auto& o : observables)
        require(o.op.rows() == H.rows() && o.op.cols() == H.cols(), "observable '" + o.name + "' has the wrong shape");

    const Generator gen(H, jumps);
    const Eigen::Index dim = H.rows();

    Evolution ev;
    ev.times = times;
    ev.expectations.assign(observables.size(), {});
    for (auto& e : ev.expectations) e.reserve(times.size());

    auto record = [&](const State& x, double /*t*/) {
        Eigen::Map<const Matrix> rho(x.data(), dim, dim);
        if (!rho.allFinite()) fail(ErrorCode::StepFailure, "Lindblad integration produced non-finite values");
        const Matrix herm = 0.5 * (rho + rho.adjoint());
        for (std::size_t k = 0; k < observables.size(); ++k)
            ev.expectations[k].push_back((observables[k].op.cwiseProduct(herm.transpose())).sum().real());
        auto& inv = ev.invariants;
        inv.max_trace_error = std::max(inv.max_trace_error, std::abs(rho.trace() - cd(1.0, 0.0)));
        inv.max_hermiticity_error = std::max(inv.max_hermiticity_error, hermiticity_error(rho));
        Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
        inv.min_eigenvalue = std::min(inv.min_eigenvalue, es.eigenvalues().minCoeff());
        if (options.store_states) ev.states.push_back(rho);
    };

    State x(rho0.data(), rho0.data() + rho0.size());
    if (times.size() == 1) {
        record(x, times.front());
        return ev;
    }

    const double scale = gen.norm_scale();
    const double span = times.back() - times.front();
    const double dt0 = scale > 0.0 ? std::min(0.01 / scale, span) : span;

    try {
        auto stepper = ode::make_dense_output(options.abs_tol, options.rel_tol, ode::runge_kutta_dopri5<State>());
        ode::integrate_times(stepper, std::cref(gen), x, times.begin(), times.end(), dt0, record,
                             ode::max_step_checker(options.max_steps));
    } catch (const ode::odeint_error& e) {
        fail(ErrorCode::StepFailure, std::string("Lindblad integration failed: ") + e.what());
    }
    return ev;
}

}  // namespace skybus::dynamics
