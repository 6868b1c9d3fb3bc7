#include "dlmg/observables.hpp"

#include <cmath>
#include <numbers>

#include "dlmg/error.hpp"

namespace dlmg {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> default_phi_grid(int points = 720) {
    std::vector<double> g(points);
    for (int k = 0; k < points; ++k) g[k] = -0.5 * kPi + kPi * k / points;
    return g;
}

// Golden-section maximization of a unimodal f on [a, b].
template <class F>
double golden_max(F&& f, double a, double b, double tol, double* arg) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - r * (b - a), d = a + r * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    double x = 0.5 * (a + b);
    if (arg) *arg = x;
    return f(x);
}

}  // namespace

SpinMoments spin_moments(const DenseMat& rho, const DickeAlgebra& alg) {
    SpinMoments s;
    s.n_spins = alg.n_spins;
    s.jx = expectation(alg.jx, rho).real();
    s.jy = expectation(alg.jy, rho).real();
    s.jz = expectation(alg.jz, rho).real();
    s.jx2 = expectation(alg.jx * alg.jx, rho).real();
    s.jy2 = expectation(alg.jy * alg.jy, rho).real();
    s.jz2 = expectation(alg.jz * alg.jz, rho).real();
    s.jxy = expectation(alg.jx * alg.jy + alg.jy * alg.jx, rho).real();
    s.jp2 = expectation(alg.jplus * alg.jplus, rho);
    return s;
}

SpinMoments spin_moments(const DensityMatrix& rho, const DickeAlgebra& alg) {
    return spin_moments(rho.matrix(), alg);
}

double c_phi(const SpinMoments& s, double phi) {
    const double n = s.n_spins;
    const double sp = std::sin(phi), cp = std::cos(phi);
    const double mean = sp * s.jx + cp * s.jy;
    const double second = sp * sp * s.jx2 + cp * cp * s.jy2 + sp * cp * s.jxy;
    return 1.0 - (4.0 / n) * (second - mean * mean) - (4.0 / (n * n)) * mean * mean;
}

double c_phi(const DensityMatrix& rho, const DickeAlgebra& alg, double phi) {
    return c_phi(spin_moments(rho, alg), phi);
}

ConcurrenceTerms concurrence_terms(const SpinMoments& s) {
    const double n = s.n_spins;
    const double ap2 = std::abs(s.jp2);
    const double a = n * (n - 2) + 4 * s.jz2, b = 4 * (n - 1) * s.jz;
    // a^2 - b^2 >= 0 for physical states; guard rounding
    const double root = std::sqrt(std::max(0.0, a * a - b * b));
    ConcurrenceTerms t;
    t.c1 = ap2 / n - (s.jx2 + s.jy2) / n + 0.5;
    t.c2 = n / 4 - s.jz2 / n - root / (4 * n);
    t.e = n / 2 - 2 * s.jz2 / n;
    t.f = root / (4 * n) + ap2 / n;
    return t;
}

double rescaled_concurrence(const SpinMoments& s) {
    ConcurrenceTerms t = concurrence_terms(s);
    return t.e < t.f ? 2 * std::max(0.0, t.c1) : 2 * std::max(0.0, t.c2);
}

double rescaled_concurrence(const DensityMatrix& rho, const DickeAlgebra& alg) {
    return rescaled_concurrence(spin_moments(rho, alg));
}

double max_c_phi(const SpinMoments& s, double* phi_star, int grid_points) {
    if (grid_points < 3) throw DomainError("max_c_phi: need at least 3 grid points");
    const double step = kPi / grid_points;
    int best = 0;
    double bestv = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid_points; ++k) {
        double v = c_phi(s, -0.5 * kPi + step * k);
        if (v > bestv) {
            bestv = v;
            best = k;
        }
    }
    double centre = -0.5 * kPi + step * best;
    double arg = centre;
    double v = golden_max([&](double p) { return c_phi(s, p); }, centre - step, centre + step, 1e-6, &arg);
    if (v < bestv) {
        v = bestv;
        arg = centre;
    }
    // report in [-pi/2, pi/2)
    arg = std::remainder(arg, kPi);
    if (arg >= 0.5 * kPi) arg -= kPi;
    if (phi_star) *phi_star = arg;
    return v;
}

EntanglementResult entanglement(const DensityMatrix& rho, const DickeAlgebra& alg, std::vector<double> phi_grid,
                                bool clip) {
    SpinMoments s = spin_moments(rho, alg);
    EntanglementResult r;
    r.phi_grid = phi_grid.empty() ? default_phi_grid() : std::move(phi_grid);
    r.c_phi.reserve(r.phi_grid.size());
    for (double p : r.phi_grid) {
        double v = c_phi(s, p);
        r.c_phi.push_back(clip ? std::max(0.0, v) : v);
    }
    r.c_r = rescaled_concurrence(s);
    max_c_phi(s, &r.phi_star);
    r.exceeds_bound = r.c_r > 1.0 + 1e-9;
    return r;
}

double hp_c_phi(const MomentState& s, double phi) {
    return 2.0 * (std::exp(cplx(0.0, 2.0 * phi)) * s.m).real() - 2.0 * s.n;
}

double hp_rescaled_concurrence(const MomentState& s) {
    const double n = s.n, am = std::abs(s.m);
    // sqrt(<(c^dag c)^2> - <c^dag c>) with the Gaussian fourth moment
    const double q = std::sqrt(2 * n * n + am * am);
    const double c1 = am - n, c2 = n - q, e = 2 * n, f = q + am;
    return e < f ? 2 * std::max(0.0, c1) : 2 * std::max(0.0, c2);
}

HPEntanglement hp_entanglement(const MomentState& s, std::vector<double> phi_grid) {
    HPEntanglement r;
    r.phi_grid = phi_grid.empty() ? default_phi_grid() : std::move(phi_grid);
    for (double p : r.phi_grid) r.c_phi.push_back(hp_c_phi(s, p));
    r.c_r = hp_rescaled_concurrence(s);
    return r;
}

double hp_c_phi_mixture(const MomentState& s, const RotationAngles& frame, double phi, int n_spins) {
    if (n_spins < 1) throw DomainError("hp_c_phi_mixture: n_spins must be >= 1");
    // frame axes: rotate x, y, z about u = (-sin p0, cos p0, 0) by theta
    const double t = frame.theta, p0 = frame.phi;
    const Eigen::Vector3d u(-std::sin(p0), std::cos(p0), 0.0);
    auto rot = [&](const Eigen::Vector3d& v) {
        return Eigen::Vector3d(v * std::cos(t) + u.cross(v) * std::sin(t) + u * u.dot(v) * (1 - std::cos(t)));
    };
    const Eigen::Vector3d ex = rot(Eigen::Vector3d::UnitX()), ey = rot(Eigen::Vector3d::UnitY()),
                          ez = rot(Eigen::Vector3d::UnitZ());
    const Eigen::Vector3d dir(std::sin(phi), std::cos(phi), 0.0);
    const double p = dir.dot(ex), q = dir.dot(ey), r = dir.dot(ez);
    const double n = s.n, mr = s.m.real(), mi = s.m.imag();
    // (4/N)<J_phi^2> with Jx' = sqrt(N)/2 X, Jy' = sqrt(N)/2 P, Jz' = N/2 - n
    const double transverse = p * p * (2 * n + 1 + 2 * mr) + q * q * (2 * n + 1 - 2 * mr) + 4 * p * q * mi;
    return 1.0 - r * r * (n_spins - 4 * n) - transverse;
}

Eigen::VectorXcd coherent_state(int n_spins, double theta, double phi) {
    if (n_spins < 1) throw DomainError("coherent_state: n_spins must be >= 1");
    const int N = n_spins;
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    const double lc = std::log(std::abs(c)), ls = std::log(std::abs(s));
    Eigen::VectorXd logs(N + 1);
    for (int k = 0; k <= N; ++k) {
        double v = 0.5 * (std::lgamma(N + 1.0) - std::lgamma(k + 1.0) - std::lgamma(N - k + 1.0));
        if (N - k > 0) v += (N - k) * lc;
        if (k > 0) v += k * ls;
        logs(k) = v;
    }
    Eigen::VectorXcd a(N + 1);
    const double sc = (c < 0 ? -1.0 : 1.0), ss = (s < 0 ? -1.0 : 1.0);
    for (int k = 0; k <= N; ++k) {
        double sign = ((N - k) % 2 ? sc : 1.0) * (k % 2 ? ss : 1.0);
        a(k) = sign * std::exp(logs(k)) * std::exp(cplx(0.0, k * phi));
    }
    return a;
}

QFunctionGrid spin_qfunction(const DensityMatrix& rho, const DickeAlgebra& alg, const std::vector<double>& thetas,
                             const std::vector<double>& phis) {
    if (thetas.empty() || phis.empty()) throw DomainError("spin_qfunction: empty grid");
    if (rho.dim() != alg.dim()) throw DimensionError("spin_qfunction: state and algebra differ in dimension");
    QFunctionGrid g;
    g.thetas = thetas;
    g.phis = phis;
    g.values.resize(thetas.size(), phis.size());
    const DenseMat& m = rho.matrix();
    for (std::size_t i = 0; i < thetas.size(); ++i)
        for (std::size_t k = 0; k < phis.size(); ++k) {
            Eigen::VectorXcd a = coherent_state(alg.n_spins, thetas[i], phis[k]);
            g.values(i, k) = std::max(0.0, (a.adjoint() * m * a)(0, 0).real());
        }
    return g;
}

}  // namespace dlmg
