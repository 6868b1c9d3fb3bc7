#include "dlmg/hp.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "dlmg/error.hpp"

namespace dlmg {

std::string to_string(Phase p) { return p == Phase::normal ? "normal" : "broken"; }

RotationAngles rotation_angles(const FixedPoint& fp) {
    const auto& s = fp.state;
    RotationAngles a;
    a.theta = std::acos(std::clamp(s.z / s.norm(), -1.0, 1.0));
    a.phi = (s.x == 0.0 && s.y == 0.0) ? 0.0 : std::atan2(s.y, s.x);
    return a;
}

HPCoefficients hp_coefficients(const LMGParams& p, Phase phase) {
    HPCoefficients c;
    c.phase = phase;
    const double h = p.h, l = p.lambda, ga = p.gamma_a, gb = p.gamma_b;
    if (phase == Phase::normal) {
        c.a1 = 2 * h - l;
        c.a2 = -l / 2;
        c.a3 = 0.0;
        c.gp = ga;
        c.gm = ga + gb;
        c.gps = ga;
        c.gms = 0.0;
        return c;
    }
    if (h <= 0.0) throw DomainError("hp_coefficients: broken-phase coefficients need h > 0");
    const double lc = h + gb * gb / (4 * h);
    if (!(l > lc)) throw DomainError("hp_coefficients: broken phase requested at lambda <= lambda_c");
    const double s = std::sqrt(l * l - gb * gb);
    const double L = l + s;
    const double h2 = h * h, gb2 = gb * gb;
    c.a1 = (-4 * h2 - 3 * gb2 + 4 * l * L) / (2 * L);
    c.a2 = ((gb2 - 4 * h2) * s - 4 * h * gb2) / (4 * l * L);
    c.a3 = gb * (-4 * h2 + gb2 + 4 * h * s) / (4 * l * L);
    const double common = ga * (4 * h2 + gb2) / (2 * l * L);
    c.gp = common + gb * (-2 * h + L) * (-2 * h + L) / (4 * L * L);
    c.gm = common + gb * (2 * h + L) * (2 * h + L) / (4 * L * L);
    c.gps = ga * ((4 * h2 - gb2) * s + 4 * h * gb2) / (2 * l * l * L) +
            gb * s * (4 * h * lc - 2 * l * L) / (4 * l * L * L);
    c.gms = ga * gb * (gb2 - 4 * h2 + 4 * h * s) / (2 * l * l * L) + gb2 * (L * L - 4 * h2) / (4 * l * L * L);
    return c;
}

HPCoefficients hp_coefficients(const LMGParams& p, const FixedPoint& fp) {
    return hp_coefficients(p, fp.branch == Branch::normal ? Phase::normal : Phase::broken);
}

EigenPair eigenvalues(const LMGParams& p, Phase phase) {
    const double h = p.h, l = p.lambda, gb = p.gamma_b;
    const cplx I(0.0, 1.0);
    EigenPair e;
    e.validated = gb <= std::sqrt(2.0) * std::abs(h) * std::sqrt(1.0 + std::sqrt(5.0));
    if (phase == Phase::normal) {
        cplx r = std::sqrt(cplx(h * (h - l)));
        e.mu_plus = -gb + 2.0 * I * r;
        e.mu_minus = -gb - 2.0 * I * r;
        return e;
    }
    const double L = broken_Lambda(l, gb);
    cplx r = std::sqrt(cplx(2 * (l * L - 2 * h * h - gb * gb)));
    e.mu_plus = -2 * gb * h / L + I * r;
    e.mu_minus = -2 * gb * h / L - I * r;
    return e;
}

Eigen::Matrix2cd first_moment_matrix(const HPCoefficients& c) {
    const cplx I(0.0, 1.0);
    const double g = c.gp - c.gm;
    Eigen::Matrix2cd M;
    M << -I * c.a1 + g, 2.0 * (c.a3 - I * c.a2), 2.0 * (c.a3 + I * c.a2), I * c.a1 + g;
    return M;
}

EigenPair first_moment_eigenvalues(const HPCoefficients& c) {
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(first_moment_matrix(c), false);
    cplx a = es.eigenvalues()(0), b = es.eigenvalues()(1);
    EigenPair e;
    // same labelling as the closed forms
    bool complex_pair = std::abs(a.imag()) > 1e-9 * (1.0 + std::abs(a));
    if (complex_pair) {
        e.mu_plus = a.imag() >= 0 ? a : b;
        e.mu_minus = a.imag() >= 0 ? b : a;
    } else {
        e.mu_minus = a.real() >= b.real() ? a : b;
        e.mu_plus = a.real() >= b.real() ? b : a;
    }
    return e;
}

Eigen::Matrix3d moment_matrix(const HPCoefficients& c) {
    const double g = c.gp - c.gm;
    Eigen::Matrix3d K;
    K << 2 * g, 4 * c.a3, -4 * c.a2,
         4 * c.a3, 2 * g, 2 * c.a1,
         -4 * c.a2, -2 * c.a1, 2 * g;
    return K;
}

Eigen::Vector3d moment_drive(const HPCoefficients& c) {
    return {2 * c.gp, 2 * c.a3 - 2 * c.gps, 2 * c.gms - 2 * c.a2};
}

MomentRate moment_flow(const HPCoefficients& c, const MomentState& s) {
    const cplx I(0.0, 1.0);
    const double g = c.gp - c.gm;
    MomentRate r;
    r.dn = (2.0 * I * c.a2 * (s.m - std::conj(s.m))).real() + 2 * c.a3 * 2 * s.m.real() +
           2 * c.gp * (s.n + 1) - 2 * c.gm * s.n;
    r.dm = -2.0 * I * c.a1 * s.m + 2.0 * (c.a3 - I * c.a2) * (2 * s.n + 1) + 2 * g * s.m - 2 * c.gps +
           2.0 * I * c.gms;
    return r;
}

MomentState moment_steady_state(const HPCoefficients& c) {
    EigenPair e = first_moment_eigenvalues(c);
    if (std::max(e.mu_plus.real(), e.mu_minus.real()) >= -1e-12)
        throw DomainError("moment_steady_state: no stable Gaussian steady state");
    Eigen::Matrix3d K = moment_matrix(c);
    Eigen::Vector3d b = moment_drive(c);
    Eigen::Vector3d x = -K.fullPivLu().solve(b);
    return {x(0), cplx(x(1), x(2))};
}

std::vector<MomentState> evolve_moments(const HPCoefficients& c, const MomentState& s0,
                                        const std::vector<double>& times) {
    Eigen::Matrix4d G = Eigen::Matrix4d::Zero();
    G.topLeftCorner<3, 3>() = moment_matrix(c);
    G.topRightCorner<3, 1>() = moment_drive(c);
    std::vector<MomentState> out;
    out.reserve(times.size());
    Eigen::Vector4d x0(s0.n, s0.m.real(), s0.m.imag(), 1.0);
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (k > 0 && times[k] < times[k - 1]) throw DomainError("evolve_moments: times must ascend");
        Eigen::Matrix4d P = (G * times[k]).exp();
        Eigen::Vector4d x = P * x0;
        out.push_back({x(0), cplx(x(1), x(2))});
    }
    return out;
}

}  // namespace dlmg
