#pragma once

#include <array>
#include <string>
#include <vector>

#include "dlmg/models.hpp"

namespace dlmg {

// Normalized Bloch vector (<Jx>, <Jy>, <Jz>)/j
struct BlochState {
    double x = 0.0, y = 0.0, z = 1.0;
    double norm() const;
};

enum class Branch { normal, broken_plus, broken_minus };
std::string to_string(Branch b);

struct FixedPoint {
    BlochState state;
    Branch branch = Branch::normal;
    bool stable = false;
    double aux_Lambda = 0.0;  // lambda + sqrt(lambda^2 - Gb^2); 0 for the normal branch
    std::array<double, 2> tangent_real_parts{};  // real parts of the tangent-plane Jacobian eigenvalues
};

struct CriticalPoints {
    double lambda_c = 0.0;       // h + Gb^2/(4h)
    double h_c = 0.0;            // (lambda - sqrt(lambda^2 - Gb^2))/2
    double lambda_prime = 0.0;   // h
    double lambda_dprime = 0.0;  // (Gb^2 + 2h^2)/sqrt(4 h lambda_c)
    bool has_lambda_c = false;   // needs h > 0
    bool has_h_c = false;        // needs lambda >= Gb
};

// (2hY - Gb ZX, -2hX + 2 lambda ZX - Gb ZY, -2 lambda XY + Gb(X^2+Y^2))
std::array<double, 3> flow(const LMGParams& p, const BlochState& s);
// d flow / d s
std::array<std::array<double, 3>, 3> flow_jacobian(const LMGParams& p, const BlochState& s);

// Normal branch always; both broken branches when they are real.
// Omitted branches are reported through `diagnostic` if non-null.
std::vector<FixedPoint> fixed_points(const LMGParams& p, std::string* diagnostic = nullptr);

// The branch downstream code linearizes about: normal when it is stable
// (this covers the bistable window 0 < h < h_c), otherwise broken_plus.
FixedPoint physical_fixed_point(const LMGParams& p);

// Throws DomainError only if neither lambda_c nor h_c is defined.
CriticalPoints critical_points(const LMGParams& p);

// Broken-branch Lambda = lambda + sqrt(lambda^2 - Gb^2); DomainError for lambda < Gb.
double broken_Lambda(double lambda, double gamma_b);

struct BlochTrajectory {
    std::vector<double> times;
    std::vector<BlochState> states;
};

// Adaptive DOPRI5 with rtol = atol = tol; output on a uniform grid of
// `samples` points including both ends.
BlochTrajectory integrate_bloch(const LMGParams& p, const BlochState& s0, double t_end, double tol = 1e-10,
                                int samples = 201);

}  // namespace dlmg
