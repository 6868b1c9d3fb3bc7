#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dlmg/density_matrix.hpp"
#include "dlmg/ode.hpp"
#include "dlmg/operators.hpp"

namespace dlmg {

// rate * D[collapse] with D[A]rho = 2 A rho A^dag - A^dag A rho - rho A^dag A
struct Dissipator {
    double rate = 0.0;
    Operator collapse;
};

class LindbladSpec {
public:
    // Throws DomainError for a non-Hermitian H or a negative rate and
    // DimensionError for mixed dimensions.
    LindbladSpec(Operator hamiltonian, std::vector<Dissipator> dissipators);

    const Operator& hamiltonian() const { return h_; }
    const std::vector<Dissipator>& dissipators() const { return d_; }
    int dim() const { return h_.dim(); }

private:
    Operator h_;
    std::vector<Dissipator> d_;
};

DenseMat liouvillian_apply(const LindbladSpec& spec, const DenseMat& rho);
DenseMat liouvillian_apply(const LindbladSpec& spec, const DensityMatrix& rho);

// Matrix of the Liouvillian acting on column-stacked vec(rho), i.e. entry
// rho(r, c) sits at r + c*dim.
SparseMat superoperator(const LindbladSpec& spec);
// ||L||_1 (max column sum), a cheap bound on the spectral radius
double superoperator_norm(const SparseMat& L);

Eigen::VectorXcd vectorize(const DenseMat& rho);
DenseMat unvectorize(const Eigen::VectorXcd& v, int dim);

struct SteadyStateOptions {
    double tol = 1e-10;
    int max_iterations = 8;          // inverse-iteration sweeps
    int dense_max_dim = 16;          // dense trace-augmented solve up to this dim
    bool check_uniqueness = true;
    std::uint64_t seed = 20240611;   // start vector of the uniqueness probe
    double fallback_t_max = 2e4;     // long-time integration budget
};

struct SteadyStateReport {
    std::string method;              // "dense", "sparse-lu", "integration"
    double residual = 0.0;           // max|L rho|
    int iterations = 0;
    double uniqueness_gap = 0.0;
    std::string uniqueness_sector;  // "full" or "parity-even"
};

// Errors: ConvergenceError (carries the residual) and NonUniqueSteadyState.
DensityMatrix steady_state(const LindbladSpec& spec, double tol = 1e-10, SteadyStateReport* report = nullptr);
DensityMatrix steady_state(const LindbladSpec& spec, const SteadyStateOptions& opt,
                           SteadyStateReport* report = nullptr);

using StateObserver = std::function<std::vector<double>(double t, const DensityMatrix& rho)>;

struct EvolveOptions {
    double tol = 1e-9;
    bool keep_states = true;
    // Optional per-time observables; names label the CSV columns.
    std::vector<std::string> columns;
    StateObserver observer;
    // Steps are capped at step_cap_factor / ||L||_1.
    double step_cap_factor = 3.0;
};

struct TrajectoryResult {
    std::vector<double> times;
    std::vector<DensityMatrix> states;           // empty unless keep_states
    std::vector<std::string> columns;
    std::vector<std::vector<double>> values;     // values[k] belongs to times[k]
    OdeStats stats;
};

TrajectoryResult evolve(const LindbladSpec& spec, const DensityMatrix& rho0, const std::vector<double>& times,
                        double tol = 1e-9);
TrajectoryResult evolve(const LindbladSpec& spec, const DensityMatrix& rho0, const std::vector<double>& times,
                        const EvolveOptions& opt);

}  // namespace dlmg
