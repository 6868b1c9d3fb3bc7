#include "dlmg/lindblad.hpp"
#include "dlmg/csv.hpp"

#include <cmath>
#include <random>

#include <Eigen/LU>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/KroneckerProduct>

#include "dlmg/error.hpp"

namespace dlmg {

LindbladSpec::LindbladSpec(Operator hamiltonian, std::vector<Dissipator> dissipators)
    : h_(std::move(hamiltonian)), d_(std::move(dissipators)) {
    if (h_.dim() < 1) throw DimensionError("LindbladSpec: empty Hamiltonian");
    if (!h_.hermitian()) h_.mark_hermitian();  // throws if it is not
    for (const auto& d : d_) {
        if (!(d.rate >= 0.0)) throw DomainError("LindbladSpec: negative dissipation rate");
        if (d.collapse.dim() != h_.dim()) throw DimensionError("LindbladSpec: collapse operator dimension");
    }
}

DenseMat liouvillian_apply(const LindbladSpec& spec, const DenseMat& rho) {
    const Operator& h = spec.hamiltonian();
    if (rho.rows() != h.dim() || rho.cols() != h.dim()) throw DimensionError("liouvillian_apply: dimension");
    const cplx mi(0.0, -1.0);
    DenseMat out = mi * (h.left_apply(rho) - h.right_apply(rho));
    for (const auto& d : spec.dissipators()) {
        if (d.rate == 0.0) continue;
        const Operator& a = d.collapse;
        Operator ad = a.adjoint();
        Operator ada = ad * a;
        DenseMat arho = a.left_apply(rho);
        out += d.rate * (2.0 * ad.right_apply(arho) - ada.left_apply(rho) - ada.right_apply(rho));
    }
    return out;
}

DenseMat liouvillian_apply(const LindbladSpec& spec, const DensityMatrix& rho) {
    return liouvillian_apply(spec, rho.matrix());
}

SparseMat superoperator(const LindbladSpec& spec) {
    const int n = spec.dim();
    SparseMat id(n, n);
    id.setIdentity();
    const SparseMat h = spec.hamiltonian().sparse();
    const cplx mi(0.0, -1.0);
    // vec(A X B) = (B^T kron A) vec(X)
    SparseMat L = mi * (SparseMat(Eigen::kroneckerProduct(id, h)) -
                        SparseMat(Eigen::kroneckerProduct(SparseMat(h.transpose()), id)));
    for (const auto& d : spec.dissipators()) {
        if (d.rate == 0.0) continue;
        const SparseMat a = d.collapse.sparse();
        const SparseMat ada = SparseMat(a.adjoint()) * a;
        SparseMat term = 2.0 * SparseMat(Eigen::kroneckerProduct(SparseMat(a.conjugate()), a)) -
                         SparseMat(Eigen::kroneckerProduct(id, ada)) -
                         SparseMat(Eigen::kroneckerProduct(SparseMat(ada.transpose()), id));
        L += d.rate * term;
    }
    L.prune(cplx(0.0), 0.0);
    L.makeCompressed();
    return L;
}

double superoperator_norm(const SparseMat& L) {
    double worst = 0.0;
    for (int k = 0; k < L.outerSize(); ++k) {
        double col = 0.0;
        for (SparseMat::InnerIterator it(L, k); it; ++it) col += std::abs(it.value());
        worst = std::max(worst, col);
    }
    return worst;
}

Eigen::VectorXcd vectorize(const DenseMat& rho) {
    return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

DenseMat unvectorize(const Eigen::VectorXcd& v, int dim) {
    if (v.size() != Eigen::Index(dim) * dim) throw DimensionError("unvectorize: size");
    return Eigen::Map<const DenseMat>(v.data(), dim, dim);
}

namespace {

// Trace-normalize and symmetrize a candidate fixed point.
DenseMat to_state(const Eigen::VectorXcd& v, int dim) {
    DenseMat r = unvectorize(v, dim);
    r /= r.trace();
    return 0.5 * (r + r.adjoint());
}

double residual_of(const SparseMat& L, const DenseMat& rho) { return (L * vectorize(rho)).cwiseAbs().maxCoeff(); }

DenseMat dense_steady(const SparseMat& Ls, int n, double tol, SteadyStateReport& rep) {
    const int nn = n * n;
    DenseMat A = DenseMat(Ls);
    // Drop the (0,0) equation (the diagonal equations sum to zero) and put
    // the trace functional in its place.
    A.row(0).setZero();
    for (int k = 0; k < n; ++k) A(0, k * (n + 1)) = 1.0;
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(nn);
    b(0) = 1.0;
    Eigen::FullPivLU<DenseMat> lu(A);
    lu.setThreshold(1e-11);
    if (lu.rank() < nn)
        throw NonUniqueSteadyState("steady_state: non-unique steady state (null space dimension " +
                                       std::to_string(nn - lu.rank() + 1) + ")",
                                   0.0);
    Eigen::VectorXcd x = lu.solve(b);
    DenseMat rho = to_state(x, n);
    rep.method = "dense";
    rep.iterations = 1;
    rep.residual = residual_of(Ls, rho);
    if (rep.residual > tol)
        throw ConvergenceError("steady_state: dense solve residual above tolerance", rep.residual);
    return rho;
}

// +1/-1 if every nonzero A_kl has k+l even/odd, 0 if mixed.
int index_parity(const Operator& a) {
    const SparseMat s = a.sparse();
    int seen = 0;
    for (int c = 0; c < s.outerSize(); ++c)
        for (SparseMat::InnerIterator it(s, c); it; ++it) {
            if (std::abs(it.value()) <= 1e-14) continue;
            int p = ((it.row() + c) % 2 == 0) ? 1 : -1;
            if (seen == 0) seen = p;
            else if (seen != p) return 0;
        }
    return seen == 0 ? 1 : seen;
}

// exp(i pi Jz) symmetry of the whole generator: H even, every collapse
// operator even or odd.
bool has_parity_symmetry(const LindbladSpec& spec) {
    if (index_parity(spec.hamiltonian()) != 1) return false;
    for (const auto& d : spec.dissipators())
        if (d.rate != 0.0 && index_parity(d.collapse) == 0) return false;
    return true;
}

DenseMat integrate_to_steady(const SparseMat& L, const DenseMat& start, int n, double tol, double t_max,
                             SteadyStateReport& rep) {
    Eigen::VectorXcd y = vectorize(start);
    OdeOptions o;
    o.rtol = o.atol = std::max(1e-12, 0.01 * tol);
    o.h_max = 3.0 / std::max(1e-12, superoperator_norm(L));
    auto rhs = [&](double, const Eigen::VectorXcd& x, Eigen::VectorXcd& dx) { dx.noalias() = L * x; };
    double t = 0.0, chunk = 10.0;
    DenseMat rho = start;
    while (t < t_max) {
        double t1 = std::min(t_max, t + chunk);
        integrate_dopri5<Eigen::VectorXcd>(rhs, t, y, std::vector<double>{t1},
                                           [&](double, const Eigen::VectorXcd& v) { y = v; }, o);
        t = t1;
        rho = to_state(y, n);
        rep.residual = residual_of(L, rho);
        ++rep.iterations;
        if (rep.residual <= tol) return rho;
        chunk *= 2.0;
    }
    throw ConvergenceError("steady_state: integration fallback did not reach tolerance", rep.residual);
}

}  // namespace

DensityMatrix steady_state(const LindbladSpec& spec, double tol, SteadyStateReport* report) {
    SteadyStateOptions opt;
    opt.tol = tol;
    return steady_state(spec, opt, report);
}

DensityMatrix steady_state(const LindbladSpec& spec, const SteadyStateOptions& opt, SteadyStateReport* report) {
    SteadyStateReport local;
    SteadyStateReport& rep = report ? *report : local;
    rep = SteadyStateReport{};
    const int n = spec.dim();
    const SparseMat L = superoperator(spec);

    if (n <= opt.dense_max_dim) return DensityMatrix(dense_steady(L, n, opt.tol, rep));

    // Shift-invert: the null vector of L dominates (L - eps)^-1 by a factor
    // |gap|/eps, so a couple of sweeps are enough.
    const int nn = n * n;
    const double eps = 1e-13 * std::max(1.0, superoperator_norm(L));
    SparseMat eye(nn, nn);
    eye.setIdentity();
    SparseMat shifted = L - cplx(eps) * eye;
    shifted.makeCompressed();
    Eigen::SparseLU<SparseMat, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(shifted);

    auto sweep = [&](Eigen::VectorXcd x, int& its, double& res) {
        DenseMat rho;
        res = std::numeric_limits<double>::infinity();
        for (its = 0; its < opt.max_iterations;) {
            x = lu.solve(x);
            ++its;
            x /= x.norm();
            DenseMat next = to_state(x, n);
            double change = rho.size() ? (next - rho).cwiseAbs().maxCoeff() : 1.0;
            rho = std::move(next);
            res = residual_of(L, rho);
            // slow modes barely show in the residual, so also wait for the
            // iterate itself to settle
            if (res <= opt.tol && change <= opt.tol) break;
        }
        return rho;
    };

    DenseMat rho;
    if (lu.info() == Eigen::Success) {
        int its = 0;
        double res = 0.0;
        rho = sweep(vectorize(DenseMat::Identity(n, n) / double(n)), its, res);
        rep.method = "sparse-lu";
        rep.iterations = its;
        rep.residual = res;
        if (!std::isfinite(res) || res > opt.tol) rho.resize(0, 0);

        if (rho.size() && opt.check_uniqueness) {
            std::mt19937_64 gen(opt.seed);
            std::normal_distribution<double> g;
            Eigen::VectorXcd x(nn);
            for (int k = 0; k < nn; ++k) x(k) = cplx(g(gen), g(gen));
            // random Hermitian positive start so the trace is nonzero
            DenseMat m = unvectorize(x, n);
            DenseMat start = m * m.adjoint();
            // With a parity symmetry the odd sector holds the tunnelling
            // mode between mirror states, whose rate can sit below double
            // precision relative to ||L||. The even sector, which contains
            // every state reachable from a symmetric start, is what we test.
            if (has_parity_symmetry(spec)) {
                rep.uniqueness_sector = "parity-even";
                for (int c = 0; c < n; ++c)
                    for (int r = 0; r < n; ++r)
                        if ((r + c) % 2) start(r, c) = 0.0;
            } else {
                rep.uniqueness_sector = "full";
            }
            int its2 = 0;
            double res2 = 0.0;
            DenseMat other = sweep(vectorize(start / start.trace()), its2, res2);
            rep.uniqueness_gap = (other - rho).cwiseAbs().maxCoeff();
            if (rep.uniqueness_gap > 100.0 * opt.tol)
                throw NonUniqueSteadyState("steady_state: non-unique steady state", rep.uniqueness_gap);
        }
    }
    if (rho.size() == 0) {
        rep.method = "integration";
        rep.iterations = 0;
        rho = integrate_to_steady(L, DenseMat::Identity(n, n) / double(n), n, opt.tol, opt.fallback_t_max, rep);
    }
    return DensityMatrix(std::move(rho));
}

TrajectoryResult evolve(const LindbladSpec& spec, const DensityMatrix& rho0, const std::vector<double>& times,
                        double tol) {
    EvolveOptions opt;
    opt.tol = tol;
    return evolve(spec, rho0, times, opt);
}

TrajectoryResult evolve(const LindbladSpec& spec, const DensityMatrix& rho0, const std::vector<double>& times,
                        const EvolveOptions& opt) {
    const int n = spec.dim();
    if (rho0.dim() != n) throw DimensionError("evolve: initial state dimension");
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (times[k] < 0.0) throw DomainError("evolve: negative output time");
        if (k > 0 && !(times[k] > times[k - 1])) throw DomainError("evolve: output times must increase strictly");
    }
    const SparseMat L = superoperator(spec);

    TrajectoryResult out;
    out.columns = opt.columns;
    OdeOptions o;
    o.rtol = o.atol = opt.tol;
    o.h_max = opt.step_cap_factor / std::max(1e-12, superoperator_norm(L));

    auto rhs = [&](double, const Eigen::VectorXcd& x, Eigen::VectorXcd& dx) { dx.noalias() = L * x; };
    const double phys_tol = std::max(1e-8, std::sqrt(opt.tol));
    auto sink = [&](double t, const Eigen::VectorXcd& v) {
        DenseMat r = unvectorize(v, n);
        StateCheck c = check_state(r);
        // Round-off and truncation error accumulate over long runs at about the
        // step tolerance per unit time; sqrt(tol) still catches any real blow-up.
        if (!c.ok(phys_tol, phys_tol, phys_tol))
            throw ConvergenceError("evolve: state left the physical set at t=" + format_number(t) + " (hermiticity " +
                                       format_number(c.hermiticity) + ", trace error " +
                                       format_number(c.trace_error) + ", min eigenvalue " +
                                       format_number(c.min_eigenvalue) + ")",
                                   std::max(c.hermiticity, c.trace_error));
        DensityMatrix rho(0.5 * (r + r.adjoint()), false);
        out.times.push_back(t);
        if (opt.observer) out.values.push_back(opt.observer(t, rho));
        if (opt.keep_states) out.states.push_back(std::move(rho));
    };
    out.stats = integrate_dopri5<Eigen::VectorXcd>(rhs, 0.0, vectorize(rho0.matrix()), times, sink, o);
    return out;
}

}  // namespace dlmg
