#pragma once

// Dormand-Prince 5(4) with FSAL and a plain (non-PI) step controller.
// Works for any Eigen column vector (real or complex, fixed or dynamic size).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dlmg/error.hpp"

namespace dlmg {

struct OdeOptions {
    double rtol = 1e-9;
    double atol = 1e-9;
    double h_initial = 0.0;  // 0 -> pick from the rhs norm
    double h_max = std::numeric_limits<double>::infinity();
    double h_min = 1e-13;    // relative to max(1, |t|)
    std::size_t max_steps = 100'000'000;
};

struct OdeStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evals = 0;
};

// rhs(t, y, dydt) fills dydt. on_output(t, y) is called at every entry of
// `times` (ascending, all >= t0). Steps are clipped to land on output times.
template <class Vec, class Rhs, class Out>
OdeStats integrate_dopri5(Rhs&& rhs, double t0, Vec y, const std::vector<double>& times, Out&& on_output,
                          const OdeOptions& opt = {}) {
    // Butcher tableau
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - bhat
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    OdeStats st;
    const auto n = y.size();
    Vec k1 = Vec::Zero(n), k2 = k1, k3 = k1, k4 = k1, k5 = k1, k6 = k1, k7 = k1, ytmp = k1, ynew = k1, err = k1;

    auto err_norm = [&](const Vec& a, const Vec& b, const Vec& e) {
        using std::abs;
        double worst = 0.0;
        for (Eigen::Index i = 0; i < e.size(); ++i) {
            double sc = opt.atol + opt.rtol * std::max(abs(a[i]), abs(b[i]));
            worst = std::max(worst, abs(e[i]) / sc);
        }
        return worst;
    };

    double t = t0;
    std::size_t next = 0;
    while (next < times.size() && times[next] <= t) {
        if (times[next] < t) throw DomainError("integrate_dopri5: output time before t0");
        on_output(t, y);
        ++next;
    }
    if (next == times.size()) return st;

    rhs(t, y, k1);
    ++st.rhs_evals;

    double h = opt.h_initial;
    if (h <= 0.0) {
        double yn = y.cwiseAbs().maxCoeff(), fn = k1.cwiseAbs().maxCoeff();
        h = (fn > 0.0) ? 0.01 * std::max(yn, opt.atol) / fn : 1e-3;
        h = std::max(h, 1e-10);
    }
    h = std::min(h, opt.h_max);

    while (next < times.size()) {
        if (st.accepted + st.rejected >= opt.max_steps)
            throw ConvergenceError("integrate_dopri5: step budget exhausted at t=" + std::to_string(t), t);

        double target = times[next];
        bool clipped = false;
        double step = h;
        if (t + step >= target) {
            step = target - t;
            clipped = true;
        }
        double hmin = opt.h_min * std::max(1.0, std::abs(t));
        if (step < hmin && !clipped)
            throw ConvergenceError("integrate_dopri5: step size underflow at t=" + std::to_string(t), step);

        ytmp = y + step * a21 * k1;
        rhs(t + c2 * step, ytmp, k2);
        ytmp = y + step * (a31 * k1 + a32 * k2);
        rhs(t + c3 * step, ytmp, k3);
        ytmp = y + step * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * step, ytmp, k4);
        ytmp = y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * step, ytmp, k5);
        ytmp = y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + step, ytmp, k6);
        ynew = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + step, ynew, k7);
        st.rhs_evals += 6;
        err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double en = err_norm(y, ynew, err);
        if (!std::isfinite(en)) en = 1e10;
        double fac = (en == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);

        if (en <= 1.0) {
            ++st.accepted;
            t = clipped ? target : t + step;
            y.swap(ynew);
            k1.swap(k7);
            // a clipped step says little about the natural step size
            if (!clipped)
                h = std::min(step * fac, opt.h_max);
            else if (fac < 1.0)
                h = std::min(h, step * fac);
            while (next < times.size() && times[next] <= t) {
                on_output(t, y);
                ++next;
            }
        } else {
            ++st.rejected;
            h = step * std::max(fac, 0.1);
        }
    }
    return st;
}

}  // namespace dlmg
