#pragma once

#include <vector>

#include "dlmg/density_matrix.hpp"
#include "dlmg/hp.hpp"
#include "dlmg/operators.hpp"

namespace dlmg {

// First and second moments of the collective spin; everything the
// entanglement measures need.
struct SpinMoments {
    int n_spins = 0;
    double jx = 0, jy = 0, jz = 0;
    double jx2 = 0, jy2 = 0, jz2 = 0;
    double jxy = 0;  // <Jx Jy + Jy Jx>
    cplx jp2{0.0};   // <J+^2>
};

SpinMoments spin_moments(const DensityMatrix& rho, const DickeAlgebra& alg);
SpinMoments spin_moments(const DenseMat& rho, const DickeAlgebra& alg);

// J_phi = sin(phi) Jx + cos(phi) Jy;
// C_phi = 1 - (4/N) Var(J_phi) - (4/N^2) <J_phi>^2
double c_phi(const SpinMoments& s, double phi);
double c_phi(const DensityMatrix& rho, const DickeAlgebra& alg, double phi);

struct ConcurrenceTerms {
    double c1 = 0, c2 = 0, e = 0, f = 0;
};
ConcurrenceTerms concurrence_terms(const SpinMoments& s);

// 2 max(0, C1) if E < F, else 2 max(0, C2)
double rescaled_concurrence(const SpinMoments& s);
double rescaled_concurrence(const DensityMatrix& rho, const DickeAlgebra& alg);

// Grid scan over one period followed by golden-section refinement (1e-6).
// Returns max_phi C_phi and writes the maximizer to phi_star.
double max_c_phi(const SpinMoments& s, double* phi_star = nullptr, int grid_points = 720);

struct EntanglementResult {
    std::vector<double> phi_grid;
    std::vector<double> c_phi;
    double c_r = 0.0;
    double phi_star = 0.0;
    // C_R above 1 (+1e-9). Reported, never clipped.
    bool exceeds_bound = false;
};

// phi_grid empty -> 720 points over [-pi/2, pi/2). clip -> max(0, C_phi).
EntanglementResult entanglement(const DensityMatrix& rho, const DickeAlgebra& alg,
                                std::vector<double> phi_grid = {}, bool clip = false);

// e^{2i phi} m + e^{-2i phi} m* - 2n
double hp_c_phi(const MomentState& s, double phi);
// Uses <(c^dag c)^2> = 2n^2 + |m|^2 + n for zero-mean Gaussian states.
double hp_rescaled_concurrence(const MomentState& s);

struct HPEntanglement {
    std::vector<double> phi_grid;
    std::vector<double> c_phi;
    double c_r = 0.0;
};
HPEntanglement hp_entanglement(const MomentState& s, std::vector<double> phi_grid = {});

// Approximation mode for broken-phase surfaces: express J_phi in the frame
// of the mean spin, keep the macroscopic part and set <J_phi> to zero, as if
// the state were an equal mixture of both branches. Needs N. Off unless
// called explicitly.
double hp_c_phi_mixture(const MomentState& s, const RotationAngles& frame, double phi, int n_spins);

struct QFunctionGrid {
    std::vector<double> thetas;
    std::vector<double> phis;
    Eigen::MatrixXd values;  // values(i, k) at (thetas[i], phis[k])
};

// Q(theta, phi) = <eta|rho|eta> with the coherent state pointing along
// (sin t cos p, sin t sin p, cos t); theta = 0 is the all-up state.
QFunctionGrid spin_qfunction(const DensityMatrix& rho, const DickeAlgebra& alg, const std::vector<double>& thetas,
                             const std::vector<double>& phis);
// Coherent-state amplitudes <j, j-k | eta>, k = 0..N
Eigen::VectorXcd coherent_state(int n_spins, double theta, double phi);

}  // namespace dlmg
