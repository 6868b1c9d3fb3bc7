#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dlmg/hp.hpp"
#include "dlmg/models.hpp"

namespace dlmg {

struct CavityParams {
    double kappa_a = 0.3, kappa_b = 15.0;
    double delta_a = 15.0, delta_b = 0.0;
    double lambda_a = 0.0, lambda_b = 0.87;

    void validate() const;
    // Gb seen by the spins once mode b is eliminated
    double gamma_b() const;
};

// Cavity block used for the probe-spectrum figures, with lambda_a picked so
// that 2 Lambda_a equals the requested lambda.
CavityParams probe_cavity(double lambda, double kappa_a = 0.3, double delta_a = 15.0, double lambda_b = 0.87,
                          double kappa_b = 15.0, double delta_b = 0.0);

// Coefficients of
//   H = dc c^dag c + da a^dag a + db b^dag b + (A c + A* c^dag)(a + a^dag)
//       + (B1 c + B2 c^dag) b + (B1* c^dag + B2* c) b^dag
struct LinearSystem {
    double delta_c = 0.0;
    cplx coupA{0.0}, b1{0.0}, b2{0.0};
    CavityParams cavity;
    RotationAngles angles;
};

LinearSystem linear_system(const LMGParams& p, const CavityParams& cavity, const RotationAngles& angles);
// All couplings to c zeroed: the bare b resonance.
LinearSystem empty_cavity(const CavityParams& cavity);

// Drift matrix of the mean values (c, c^dag, a, a^dag, b, b^dag).
Eigen::Matrix<cplx, 6, 6> drift_matrix(const LinearSystem& sys);

struct SpectrumResult {
    std::vector<double> nu;
    std::vector<double> t_p;
    std::vector<bool> diverged;

    std::size_t size() const { return nu.size(); }
};

// Mean response to a drive E e^{-i nu t} on mode b. The transmitted field is
// proportional to b; intensities are divided by the peak of the bare
// b Lorentzian with the same cavity parameters, so an empty cavity peaks at 1.
// A point is flagged diverged if the solve is singular or a drift eigenvalue
// with |Re| below half the grid spacing sits within half a spacing of -i nu.
SpectrumResult transmission(const LinearSystem& sys, const std::vector<double>& nu_grid, double drive = 1.0);
// Same, after checking that the linearized spin dynamics is stable.
SpectrumResult transmission(const LinearSystem& sys, const HPCoefficients& hp, const std::vector<double>& nu_grid,
                            double drive = 1.0);

// Closed form valid in the normal phase for |nu| << delta_a, kappa_b:
// |1 - i Gb/(4 sqrt h sqrt(h-l)) [(sqrt h + sqrt(h-l))^2/(nu - q + i Gb)
//                                 - (sqrt h - sqrt(h-l))^2/(nu + q + i Gb)]|^2,
// q = 2 sqrt h sqrt(h - l). DomainError for lambda >= lambda_c.
SpectrumResult transmission_approx(const LMGParams& p, const std::vector<double>& nu_grid);

std::vector<double> uniform_grid(double lo, double hi, int points);

struct Peak {
    std::size_t index = 0;
    double nu = 0.0;
    double height = 0.0;
    double prominence = 0.0;
};

// Local maxima whose topographic prominence is at least min_prominence.
std::vector<Peak> find_peaks(const SpectrumResult& s, double min_prominence = 0.5);

struct Dip {
    double nu = 0.0;
    double depth = 0.0;       // baseline - minimum
    double full_width = 0.0;  // width at half depth
};

// Deepest local minimum in [lo, hi]; the baseline is the larger of the two
// bracketing maxima found by walking outwards. Linear interpolation at the
// half-depth crossings.
Dip find_dip(const SpectrumResult& s, double lo, double hi);

}  // namespace dlmg
