#include "dlmg/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "dlmg/error.hpp"

namespace dlmg {

using Mat6 = Eigen::Matrix<cplx, 6, 6>;
using Vec6 = Eigen::Matrix<cplx, 6, 1>;

void CavityParams::validate() const {
    if (!(kappa_a > 0.0) || !(kappa_b > 0.0)) throw DomainError("CavityParams: kappa_a, kappa_b must be > 0");
}

double CavityParams::gamma_b() const { return adiabatic_rates(lambda_b, kappa_b, delta_b).second; }

CavityParams probe_cavity(double lambda, double kappa_a, double delta_a, double lambda_b, double kappa_b,
                          double delta_b) {
    if (delta_a == 0.0) throw DomainError("probe_cavity: delta_a must be nonzero to produce Lambda_a");
    double la2 = lambda * (kappa_a * kappa_a + delta_a * delta_a) / (2.0 * delta_a);
    if (la2 < 0.0) throw DomainError("probe_cavity: lambda and delta_a have opposite signs");
    CavityParams c{kappa_a, kappa_b, delta_a, delta_b, std::sqrt(la2), lambda_b};
    c.validate();
    return c;
}

LinearSystem linear_system(const LMGParams& p, const CavityParams& cavity, const RotationAngles& ang) {
    cavity.validate();
    const cplx I(0.0, 1.0);
    const double ct = std::cos(ang.theta), st = std::sin(ang.theta);
    const double cp = std::cos(ang.phi), sp = std::sin(ang.phi);
    const double X = st * cp, Y = st * sp;
    LinearSystem s;
    s.cavity = cavity;
    s.angles = ang;
    // The lambda term carries 2 lambda X sin(theta) cos(phi). The Gb bracket
    // vanishes identically for theta, phi built from (X, Y).
    s.delta_c = 2 * p.h * ct + 2 * st * (p.lambda * X * cp - p.gamma_b * (Y * cp - X * sp));
    const cplx e = (sp + I * cp) * (sp + I * cp);
    s.coupA = 0.5 * cavity.lambda_a * ((1 + ct) + (1 - ct) * e);
    s.b1 = 0.5 * cavity.lambda_b * (1 - ct) * e;
    s.b2 = 0.5 * cavity.lambda_b * (1 + ct);
    return s;
}

LinearSystem empty_cavity(const CavityParams& cavity) {
    cavity.validate();
    LinearSystem s;
    s.cavity = cavity;
    return s;
}

Mat6 drift_matrix(const LinearSystem& s) {
    const cplx I(0.0, 1.0);
    const auto& cv = s.cavity;
    const cplx A = s.coupA, Ac = std::conj(A), B1 = s.b1, B2 = s.b2;
    Mat6 M = Mat6::Zero();
    // order: c, c^dag, a, a^dag, b, b^dag
    M.row(0) << -I * s.delta_c, 0.0, -I * Ac, -I * Ac, -I * B2, -I * std::conj(B1);
    M.row(1) << 0.0, I * s.delta_c, I * A, I * A, I * B1, I * std::conj(B2);
    M.row(2) << -I * A, -I * Ac, -(cv.kappa_a + I * cv.delta_a), 0.0, 0.0, 0.0;
    M.row(3) << I * A, I * Ac, 0.0, -(cv.kappa_a - I * cv.delta_a), 0.0, 0.0;
    M.row(4) << -I * std::conj(B2), -I * std::conj(B1), 0.0, 0.0, -(cv.kappa_b + I * cv.delta_b), 0.0;
    M.row(5) << I * B1, I * B2, 0.0, 0.0, 0.0, -(cv.kappa_b - I * cv.delta_b);
    return M;
}

namespace {

cplx b_response(const Mat6& M, double nu, double drive, double kappa_b, bool& singular) {
    const cplx I(0.0, 1.0);
    Vec6 F = Vec6::Zero();
    F(4) = std::sqrt(2 * kappa_b) * drive;
    Eigen::PartialPivLU<Mat6> lu(M + I * nu * Mat6::Identity());
    Vec6 U = -lu.solve(F);
    singular = !U.allFinite() || !std::isfinite(std::abs(lu.determinant())) || lu.determinant() == cplx(0.0);
    return U(4);
}

}  // namespace

SpectrumResult transmission(const LinearSystem& sys, const std::vector<double>& nu_grid, double drive) {
    if (drive == 0.0) throw DomainError("transmission: zero probe amplitude");
    const auto& cv = sys.cavity;
    cv.validate();

    // peak of the bare Lorentzian |sqrt(2 kb) E / (kb + i(db - nu))|^2 at nu = db
    const double norm = 2.0 * drive * drive / cv.kappa_b;
    // Without spin couplings the b row is closed and the undamped c mode
    // must not make the solve singular or trip the divergence flag.
    const bool decoupled = sys.coupA == cplx(0.0) && sys.b1 == cplx(0.0) && sys.b2 == cplx(0.0);
    bool sing = false;

    const Mat6 M = drift_matrix(sys);
    Eigen::ComplexEigenSolver<Mat6> es(M, false);
    const auto mu = es.eigenvalues();

    double spacing = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < nu_grid.size(); ++k) spacing = std::min(spacing, std::abs(nu_grid[k] - nu_grid[k - 1]));
    const double half = std::isfinite(spacing) ? 0.5 * spacing : 1e-9;

    SpectrumResult r;
    r.nu = nu_grid;
    r.t_p.reserve(nu_grid.size());
    r.diverged.reserve(nu_grid.size());
    for (double nu : nu_grid) {
        if (!std::isfinite(nu)) throw DomainError("transmission: non-finite probe frequency");
        bool flag = false;
        cplx ub;
        if (decoupled) {
            sing = false;
            ub = -std::sqrt(2 * cv.kappa_b) * drive / (M(4, 4) + cplx(0.0, nu));
        } else {
            for (int k = 0; k < 6; ++k)
                if (std::abs(mu(k).real()) <= half && std::abs(mu(k).imag() + nu) <= half) flag = true;
            ub = b_response(M, nu, drive, cv.kappa_b, sing);
        }
        double t = std::norm(ub) / norm;
        if (sing || !std::isfinite(t)) {
            // exactly on a pole: report the grid-limited value half a spacing away
            flag = true;
            t = std::norm(b_response(M, nu + half, drive, cv.kappa_b, sing)) / norm;
            if (sing || !std::isfinite(t)) t = std::numeric_limits<double>::max();
        }
        r.t_p.push_back(t);
        r.diverged.push_back(flag);
    }
    return r;
}

SpectrumResult transmission(const LinearSystem& sys, const HPCoefficients& hp, const std::vector<double>& nu_grid,
                            double drive) {
    EigenPair e = first_moment_eigenvalues(hp);
    if (std::max(e.mu_plus.real(), e.mu_minus.real()) > 1e-12)
        throw DomainError("transmission: linearized spin dynamics is unstable");
    return transmission(sys, nu_grid, drive);
}

SpectrumResult transmission_approx(const LMGParams& p, const std::vector<double>& nu_grid) {
    const double h = p.h, l = p.lambda, gb = p.gamma_b;
    if (h <= 0.0) throw DomainError("transmission_approx: needs h > 0");
    if (l >= h + gb * gb / (4 * h)) throw DomainError("transmission_approx: only valid for lambda < lambda_c");
    const cplx I(0.0, 1.0);
    const cplx sh = std::sqrt(cplx(h)), sl = std::sqrt(cplx(h - l));
    const cplx q = 2.0 * sh * sl;
    const cplx pref = I * gb / (4.0 * sh * sl);
    SpectrumResult r;
    r.nu = nu_grid;
    for (double nu : nu_grid) {
        cplx amp = 1.0 - pref * ((sh + sl) * (sh + sl) / (nu - q + I * gb) - (sh - sl) * (sh - sl) / (nu + q + I * gb));
        r.t_p.push_back(std::norm(amp));
        r.diverged.push_back(false);
    }
    return r;
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
    if (points < 2 || !(hi > lo)) throw DomainError("uniform_grid: need hi > lo and >= 2 points");
    std::vector<double> g(points);
    for (int k = 0; k < points; ++k) g[k] = lo + (hi - lo) * k / (points - 1);
    g.back() = hi;
    return g;
}

std::vector<Peak> find_peaks(const SpectrumResult& s, double min_prominence) {
    const auto& y = s.t_p;
    const std::size_t n = y.size();
    std::vector<Peak> out;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
        // Lowest point on each side before something higher (or the grid
        // edge); the peak stands above the higher of the two.
        double lmin = y[i], rmin = y[i];
        for (std::size_t k = i; k-- > 0 && y[k] <= y[i];) lmin = std::min(lmin, y[k]);
        for (std::size_t k = i + 1; k < n && y[k] <= y[i]; ++k) rmin = std::min(rmin, y[k]);
        double base = std::max(lmin, rmin);
        double prom = y[i] - base;
        if (prom >= min_prominence) out.push_back({i, s.nu[i], y[i], prom});
    }
    return out;
}

Dip find_dip(const SpectrumResult& s, double lo, double hi) {
    const auto& y = s.t_p;
    const auto& x = s.nu;
    std::size_t best = y.size();
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (x[i] < lo || x[i] > hi) continue;
        if (y[i] < y[i - 1] && y[i] <= y[i + 1] && (best == y.size() || y[i] < y[best])) best = i;
    }
    if (best == y.size()) throw DomainError("find_dip: no local minimum in the window");
    std::size_t l = best, r = best;
    while (l > 0 && x[l - 1] >= lo && y[l - 1] >= y[l]) --l;
    while (r + 1 < y.size() && x[r + 1] <= hi && y[r + 1] >= y[r]) ++r;
    const double base = std::max(y[l], y[r]);
    Dip d;
    d.nu = x[best];
    d.depth = base - y[best];
    const double half = y[best] + 0.5 * d.depth;
    auto cross = [&](std::size_t a, std::size_t b) {
        // y[a] < half <= y[b] on adjacent points
        return x[a] + (half - y[a]) * (x[b] - x[a]) / (y[b] - y[a]);
    };
    std::size_t i = best;
    while (i > l && y[i - 1] < half) --i;
    double xl = (i > l) ? cross(i, i - 1) : x[l];
    std::size_t j = best;
    while (j < r && y[j + 1] < half) ++j;
    double xr = (j < r) ? cross(j, j + 1) : x[r];
    d.full_width = xr - xl;
    return d;
}

}  // namespace dlmg
