#include "dlmg/semiclassical.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "dlmg/error.hpp"
#include "dlmg/ode.hpp"

namespace dlmg {

double BlochState::norm() const { return std::sqrt(x * x + y * y + z * z); }

std::string to_string(Branch b) {
    switch (b) {
        case Branch::normal: return "normal";
        case Branch::broken_plus: return "broken_plus";
        case Branch::broken_minus: return "broken_minus";
    }
    return "unknown";
}

std::array<double, 3> flow(const LMGParams& p, const BlochState& s) {
    const double h = p.h, l = p.lambda, g = p.gamma_b;
    const double X = s.x, Y = s.y, Z = s.z;
    return {2 * h * Y - g * Z * X, -2 * h * X + 2 * l * Z * X - g * Z * Y, -2 * l * X * Y + g * (X * X + Y * Y)};
}

std::array<std::array<double, 3>, 3> flow_jacobian(const LMGParams& p, const BlochState& s) {
    const double h = p.h, l = p.lambda, g = p.gamma_b;
    const double X = s.x, Y = s.y, Z = s.z;
    return {{{-g * Z, 2 * h, -g * X},
             {-2 * h + 2 * l * Z, -g * Z, 2 * l * X - g * Y},
             {-2 * l * Y + 2 * g * X, -2 * l * X + 2 * g * Y, 0.0}}};
}

double broken_Lambda(double lambda, double gamma_b) {
    double disc = lambda * lambda - gamma_b * gamma_b;
    if (disc < 0.0 || lambda < 0.0) throw DomainError("broken_Lambda: requires lambda >= Gamma_b");
    return lambda + std::sqrt(disc);
}

namespace {

// Eigenvalue real parts of the Jacobian restricted to the tangent plane at s.
// The radial direction is neutral (the flow preserves |s|) and is left out.
std::array<double, 2> tangent_real_parts(const LMGParams& p, const BlochState& s) {
    Eigen::Vector3d n(s.x, s.y, s.z);
    n.normalize();
    Eigen::Vector3d a = std::abs(n.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    Eigen::Vector3d e1 = (a - a.dot(n) * n).normalized();
    Eigen::Vector3d e2 = n.cross(e1);
    auto J = flow_jacobian(p, s);
    Eigen::Matrix3d Jm;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) Jm(r, c) = J[r][c];
    Eigen::Matrix2d P;
    P << e1.dot(Jm * e1), e1.dot(Jm * e2), e2.dot(Jm * e1), e2.dot(Jm * e2);
    Eigen::EigenSolver<Eigen::Matrix2d> es(P, false);
    auto ev = es.eigenvalues();
    return {ev(0).real(), ev(1).real()};
}

FixedPoint make_point(const LMGParams& p, BlochState s, Branch b, double Lambda) {
    FixedPoint fp;
    fp.state = s;
    fp.branch = b;
    fp.aux_Lambda = Lambda;
    fp.tangent_real_parts = tangent_real_parts(p, s);
    fp.stable = fp.tangent_real_parts[0] < -1e-12 && fp.tangent_real_parts[1] < -1e-12;
    return fp;
}

}  // namespace

std::vector<FixedPoint> fixed_points(const LMGParams& p, std::string* diagnostic) {
    if (p.gamma_anisotropy != 0) throw DomainError("fixed_points: semiclassical flow is for the gamma=0 model");
    std::vector<FixedPoint> out;
    out.push_back(make_point(p, {0.0, 0.0, 1.0}, Branch::normal, 0.0));

    if (p.lambda < p.gamma_b || p.lambda <= 0.0) {
        if (diagnostic) *diagnostic = "broken branches omitted: lambda < Gamma_b makes Lambda complex";
        return out;
    }
    const double L = broken_Lambda(p.lambda, p.gamma_b);
    const double x2 = (L * L - 4 * p.h * p.h) / (2 * p.lambda * L);
    if (x2 <= 0.0) {
        if (diagnostic) *diagnostic = "broken branches omitted: X^2 <= 0 (below the bifurcation)";
        return out;
    }
    const double X = std::sqrt(x2);
    const double Z = 2 * p.h / L;
    // (Gb/2h) X Z reduces to Gb X / Lambda, which also covers h = 0
    const double Y = p.gamma_b * X / L;
    out.push_back(make_point(p, {X, Y, Z}, Branch::broken_plus, L));
    out.push_back(make_point(p, {-X, -Y, Z}, Branch::broken_minus, L));
    return out;
}

FixedPoint physical_fixed_point(const LMGParams& p) {
    auto fps = fixed_points(p);
    if (fps.front().stable) return fps.front();
    for (const auto& f : fps)
        if (f.branch == Branch::broken_plus && f.stable) return f;
    throw DomainError("physical_fixed_point: no stable fixed point (marginal parameters)");
}

CriticalPoints critical_points(const LMGParams& p) {
    CriticalPoints c;
    const double h = p.h, l = p.lambda, g = p.gamma_b;
    c.lambda_prime = h;
    if (h > 0.0) {
        c.has_lambda_c = true;
        c.lambda_c = h + g * g / (4 * h);
        c.lambda_dprime = (g * g + 2 * h * h) / std::sqrt(4 * h * c.lambda_c);
    }
    if (l >= g && l >= 0.0) {
        c.has_h_c = true;
        c.h_c = 0.5 * (l - std::sqrt(l * l - g * g));
    }
    if (!c.has_lambda_c && !c.has_h_c)
        throw DomainError("critical_points: need h > 0 (for lambda_c) or lambda >= Gamma_b (for h_c)");
    return c;
}

BlochTrajectory integrate_bloch(const LMGParams& p, const BlochState& s0, double t_end, double tol, int samples) {
    if (std::abs(s0.norm() - 1.0) > 1e-9) throw DomainError("integrate_bloch: |s0| must be 1");
    if (samples < 2 || !(t_end > 0.0)) throw DomainError("integrate_bloch: need t_end > 0 and >= 2 samples");
    std::vector<double> grid(samples);
    for (int k = 0; k < samples; ++k) grid[k] = t_end * k / (samples - 1);
    grid.back() = t_end;

    BlochTrajectory tr;
    auto rhs = [&](double, const Eigen::Vector3d& y, Eigen::Vector3d& dy) {
        auto f = flow(p, {y(0), y(1), y(2)});
        dy << f[0], f[1], f[2];
    };
    auto sink = [&](double t, const Eigen::Vector3d& y) {
        tr.times.push_back(t);
        tr.states.push_back({y(0), y(1), y(2)});
    };
    OdeOptions o;
    o.rtol = o.atol = tol;
    integrate_dopri5<Eigen::Vector3d>(rhs, 0.0, Eigen::Vector3d(s0.x, s0.y, s0.z), grid, sink, o);
    return tr;
}

}  // namespace dlmg
