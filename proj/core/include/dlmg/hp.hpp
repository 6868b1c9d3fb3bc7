#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dlmg/models.hpp"
#include "dlmg/semiclassical.hpp"

namespace dlmg {

enum class Phase { normal, broken };
std::string to_string(Phase p);

// Bloch vector = (sin t cos p, sin t sin p, cos t)
struct RotationAngles {
    double theta = 0.0;
    double phi = 0.0;
};

RotationAngles rotation_angles(const FixedPoint& fp);

// H_lin = a1 c^dag c + a2 (c^2 + c^dag^2) + i a3 (c^dag^2 - c^2), plus
// gp D[c^dag] + gm D[c] and the squeezed terms gps, gms.
struct HPCoefficients {
    double a1 = 0.0, a2 = 0.0, a3 = 0.0;
    double gp = 0.0, gm = 0.0;
    double gps = 0.0, gms = 0.0;
    Phase phase = Phase::normal;
};

// Broken phase needs lambda > lambda_c. The branch sign does not enter.
HPCoefficients hp_coefficients(const LMGParams& p, const FixedPoint& fp);
HPCoefficients hp_coefficients(const LMGParams& p, Phase phase);

struct EigenPair {
    cplx mu_plus;
    cplx mu_minus;  // the mode that softens at lambda_c
    bool validated = true;  // false in the Gb > sqrt2 h sqrt(1+sqrt5) regime
};

// Closed forms, normal: -Gb +- 2i sqrt(h(h - lambda));
// broken: -2 Gb h/Lambda +- i sqrt(2(lambda Lambda - 2h^2 - Gb^2)).
// Principal square roots, so Im mu_plus >= 0 and, when both are real,
// mu_minus is the larger one.
EigenPair eigenvalues(const LMGParams& p, Phase phase);

// d/dt (<c>, <c^dag>) = M (<c>, <c^dag>)
Eigen::Matrix2cd first_moment_matrix(const HPCoefficients& c);
EigenPair first_moment_eigenvalues(const HPCoefficients& c);

struct MomentState {
    double n = 0.0;  // <c^dag c>
    cplx m{0.0};     // <c^2>
};

struct MomentRate {
    double dn = 0.0;
    cplx dm{0.0};
};

// Second-moment equations of the linearized master equation. With
// g = gp - gm:
//   dn/dt = 2i a2 (m - m*) + 2 a3 (m + m*) + 2 gp (n+1) - 2 gm n
//   dm/dt = -2i a1 m + 2 (a3 - i a2)(2n + 1) + 2 g m - 2 gps + 2i gms
// In real form x = (n, Re m, Im m), dx/dt = K x + b with
//   K = [[2g, 4a3, -4a2], [4a3, 2g, 2a1], [-4a2, -2a1, 2g]]
//   b = (2gp, 2a3 - 2gps, 2gms - 2a2).
MomentRate moment_flow(const HPCoefficients& c, const MomentState& s);
Eigen::Matrix3d moment_matrix(const HPCoefficients& c);
Eigen::Vector3d moment_drive(const HPCoefficients& c);

// DomainError("no stable Gaussian steady state") when max Re mu >= -1e-12.
MomentState moment_steady_state(const HPCoefficients& c);

// Exact propagation through the exponential of the augmented 4x4 generator.
std::vector<MomentState> evolve_moments(const HPCoefficients& c, const MomentState& s0,
                                        const std::vector<double>& times);

}  // namespace dlmg
