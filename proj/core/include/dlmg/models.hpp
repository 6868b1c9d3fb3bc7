#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>

#include "dlmg/lindblad.hpp"
#include "dlmg/operators.hpp"

namespace dlmg {

struct MicroscopicParams {
    // Rabi frequencies and cavity couplings (angular frequency units)
    cplx rabi_r0{0.0}, rabi_s0{0.0}, rabi_r1{0.0}, rabi_s1{0.0};
    cplx g_r0{0.0}, g_s1{0.0}, g_r1{0.0}, g_s0{0.0};
    double delta_r = 0.0, delta_s = 0.0;  // excited-state detunings, nonzero
    double omega_1 = 0.0, omega_1_prime = 0.0;
    double kappa_a = 0.0, kappa_b = 0.0;
    double delta_a_raw = 0.0, delta_b_raw = 0.0;  // Raman detunings delta_a, delta_b
    int n_atoms = 1;
};

struct EffectiveParams {
    double omega_0 = 0.0;
    double h = 0.0;  // -omega_0/2
    double lambda_a = 0.0, lambda_b = 0.0;
    double alpha_a = 0.0, beta_a = 0.0, alpha_b = 0.0, beta_b = 0.0;
    double Lambda_a = 0.0, Lambda_b = 0.0;
    double Gamma_a = 0.0, Gamma_b = 0.0;
    // Dispersive shifts. Reported only; no builder uses them.
    double delta_a_plus = 0.0, delta_a_minus = 0.0, delta_b_plus = 0.0, delta_b_minus = 0.0;
};

// Lambda_i = l^2 d/(k^2+d^2), Gamma_i = l^2 k/(k^2+d^2)
std::pair<double, double> adiabatic_rates(double lambda_i, double kappa_i, double delta_i);

EffectiveParams effective_params(const MicroscopicParams& micro);

struct LMGParams {
    int n_atoms = 1;
    double h = 1.0;
    double lambda = 0.0;
    int gamma_anisotropy = 0;  // -1, 0 or +1
    // gamma = 0, +1: Gamma_a, Gamma_b. gamma = -1: Gamma_+ and Gamma_-.
    double gamma_a = 0.0;
    double gamma_b = 0.0;

    void validate() const;
};

// Gamma_+ = Gamma alpha^2, Gamma_- = Gamma beta^2 for the gamma = -1 model
std::pair<double, double> conventional_rates(double gamma, double alpha, double beta);

// H = -2h Jz - (2 lambda/N) Jx^2, (Ga/N) D[2Jx] + (Gb/N) D[J+]
LindbladSpec build_gamma0(const LMGParams& p, const DickeAlgebra& alg);
// H = -2h Jz - (2 lambda/N)(Jx^2 - Jy^2), (G+/N) D[J+] + (G-/N) D[J-]
LindbladSpec build_conventional(const LMGParams& p, const DickeAlgebra& alg);
// H = -2h Jz - (2 lambda/N)(Jx^2 + Jy^2), (Ga/N) D[J-] + (Gb/N) D[J+]
LindbladSpec build_isotropic(const LMGParams& p, const DickeAlgebra& alg);
// Dispatch on p.gamma_anisotropy.
LindbladSpec build_model(const LMGParams& p, const DickeAlgebra& alg);

}  // namespace dlmg
