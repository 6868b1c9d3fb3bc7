#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dlmg/dlmg.hpp"

using namespace dlmg;

namespace {

const cplx I(0.0, 1.0);

LMGParams spins(double h, double lambda, const CavityParams& c) {
    LMGParams p;
    p.h = h;
    p.lambda = lambda;
    p.gamma_b = c.gamma_b();
    return p;
}

SpectrumResult spectrum_at(double h, double lambda, const std::vector<double>& grid) {
    CavityParams cav = probe_cavity(lambda);
    LMGParams p = spins(h, lambda, cav);
    FixedPoint fp = physical_fixed_point(p);
    return transmission(linear_system(p, cav, rotation_angles(fp)), hp_coefficients(p, fp), grid);
}

double max_t(const SpectrumResult& s) { return *std::max_element(s.t_p.begin(), s.t_p.end()); }

TEST(Cavity, ProbePresetDerivesCouplings) {
    CavityParams c = probe_cavity(0.3);
    EXPECT_NEAR(c.gamma_b(), 0.87 * 0.87 / 15, 1e-15);
    auto [La, Ga] = adiabatic_rates(c.lambda_a, c.kappa_a, c.delta_a);
    EXPECT_NEAR(2 * La, 0.3, 1e-14);
    EXPECT_GT(Ga, 0.0);
    EXPECT_THROW(probe_cavity(0.3, 0.3, 0.0), DomainError);
    CavityParams bad;
    bad.kappa_b = 0.0;
    EXPECT_THROW(bad.validate(), DomainError);
}

TEST(LinearSystemTest, NormalPhaseLimit) {
    CavityParams c = probe_cavity(0.5);
    LinearSystem s = linear_system(spins(1.0, 0.5, c), c, {0.0, 0.0});
    EXPECT_NEAR(s.delta_c, 2.0, 1e-15);
    EXPECT_NEAR(std::abs(s.coupA - c.lambda_a), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.b1), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.b2 - c.lambda_b), 0.0, 1e-15);
}

TEST(LinearSystemTest, EquatorFormulas) {
    CavityParams c = probe_cavity(1.0);
    LinearSystem s = linear_system(spins(1.0, 1.0, c), c, {M_PI / 2, 0.0});
    // (sin 0 + i cos 0)^2 = -1
    EXPECT_NEAR(std::abs(s.coupA), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.b1 + 0.5 * c.lambda_b), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.b2 - 0.5 * c.lambda_b), 0.0, 1e-15);
    double phi = 0.3;
    LinearSystem t = linear_system(spins(1.0, 1.0, c), c, {M_PI / 2, phi});
    cplx e = std::pow(std::sin(phi) + I * std::cos(phi), 2);
    EXPECT_NEAR(std::abs(t.coupA - 0.5 * c.lambda_a * (1.0 + e)), 0.0, 1e-15);
}

TEST(LinearSystemTest, LargeLambdaLimit) {
    const double l = 400.0;
    CavityParams c = probe_cavity(l);
    LMGParams p = spins(1.0, l, c);
    LinearSystem s = linear_system(p, c, rotation_angles(physical_fixed_point(p)));
    EXPECT_NEAR(s.delta_c / (2 * l), 1.0, 1e-3);
    EXPECT_LE(std::abs(s.coupA) / c.lambda_a, 1e-2);
    EXPECT_NEAR(std::abs(s.b1 + 0.5 * c.lambda_b), 0.0, 1e-2);
    EXPECT_NEAR(std::abs(s.b2 - 0.5 * c.lambda_b), 0.0, 1e-2);
}

TEST(Transmission, EmptyCavityIsALorentzian) {
    CavityParams c = probe_cavity(0.3);
    c.delta_b = 0.4;
    auto grid = uniform_grid(-5.0, 5.0, 1001);
    SpectrumResult s = transmission(empty_cavity(c), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double d = grid[i] - c.delta_b;
        EXPECT_NEAR(s.t_p[i], c.kappa_b * c.kappa_b / (c.kappa_b * c.kappa_b + d * d), 1e-12);
        EXPECT_FALSE(s.diverged[i]);
    }
    EXPECT_NEAR(max_t(s), 1.0, 1e-6);
}

TEST(Transmission, NormalizationIndependentOfGrid) {
    auto coarse = spectrum_at(1.0, 0.5, uniform_grid(-3.0, 3.0, 101));
    auto fine = spectrum_at(1.0, 0.5, uniform_grid(-3.0, 3.0, 1001));
    EXPECT_NEAR(coarse.t_p[50], fine.t_p[500], 1e-12);
    EXPECT_NEAR(coarse.t_p[0], fine.t_p[0], 1e-12);
}

TEST(Transmission, DipInTheNormalPhase) {
    SpectrumResult s = spectrum_at(1.0, 0.3, uniform_grid(1.0, 2.3, 13001));
    Dip d = find_dip(s, 1.4, 2.0);
    EXPECT_NEAR(d.nu, 2 * std::sqrt(0.7), 0.02);
    EXPECT_NEAR(d.full_width, 2 * probe_cavity(0.3).gamma_b(), 0.02);
}

TEST(Transmission, CentralPeakAtLambdaEqualsH) {
    SpectrumResult s = spectrum_at(1.0, 1.0, {0.0});
    double gb = probe_cavity(1.0).gamma_b();
    EXPECT_NEAR(s.t_p[0], 1.0 / (gb * gb), 0.2 / (gb * gb));
}

TEST(Transmission, PeakGrowsTowardsCriticality) {
    auto grid = uniform_grid(-3.0, 3.0, 6001);
    double last = 0.0, last_pos = 10.0;
    for (double l : {0.93, 0.992, 1.000625}) {
        SpectrumResult s = spectrum_at(1.0, l, grid);
        auto it = std::max_element(s.t_p.begin(), s.t_p.end());
        double pos = std::abs(s.nu[it - s.t_p.begin()]);
        EXPECT_GT(*it, last) << l;
        EXPECT_LE(pos, last_pos + 1e-12) << l;
        last = *it;
        last_pos = pos;
    }
    EXPECT_LT(last_pos, 0.05);
}

TEST(Transmission, FlagsTheCriticalPole) {
    // gamma_b does not depend on lambda_a, so lambda_c is known before the cavity
    LMGParams p = spins(1.0, 0.0, probe_cavity(1.0));
    p.lambda = critical_points(p).lambda_c;
    CavityParams cav = probe_cavity(p.lambda);
    SpectrumResult s = transmission(linear_system(p, cav, {0.0, 0.0}), uniform_grid(-1.0, 1.0, 201));
    EXPECT_TRUE(s.diverged[100]);
    EXPECT_TRUE(std::isfinite(s.t_p[100]));
    EXPECT_FALSE(s.diverged[0]);
}

TEST(Transmission, RejectsUnstableLinearization) {
    CavityParams cav = probe_cavity(1.5);
    LMGParams p = spins(1.0, 1.5, cav);
    // linearizing about the normal branch in the broken phase is unstable
    HPCoefficients k = hp_coefficients(p, Phase::normal);
    EXPECT_THROW(transmission(linear_system(p, cav, {0.0, 0.0}), k, {0.0}), DomainError);
    EXPECT_THROW(transmission(empty_cavity(cav), {0.0}, 0.0), DomainError);
}

TEST(Approx, ZeroCouplingLimit) {
    LMGParams p;
    p.h = 1.0;
    p.gamma_b = 0.05;
    auto grid = uniform_grid(-3.0, 3.0, 601);
    SpectrumResult s = transmission_approx(p, grid);
    // at lambda = 0 the second pole's residue (sqrt h - sqrt(h-l))^2 vanishes,
    // leaving one dip at +2h
    for (std::size_t i = 0; i < grid.size(); ++i) {
        cplx amp = 1.0 - I * 0.05 / (grid[i] - 2.0 + I * 0.05);
        EXPECT_NEAR(s.t_p[i], std::norm(amp), 1e-12);
    }
    SpectrumResult far = transmission_approx(p, {-1e6, 1e6});
    EXPECT_NEAR(far.t_p[0], 1.0, 1e-6);
    EXPECT_NEAR(far.t_p[1], 1.0, 1e-6);
    p.lambda = 1.5;
    EXPECT_THROW(transmission_approx(p, grid), DomainError);
}

TEST(Peaks, FirstOrderSplitting) {
    const double lambda = 1.0;
    CavityParams cav = probe_cavity(lambda);
    double hc = critical_points(spins(1.0, lambda, cav)).h_c;
    auto grid = uniform_grid(-3.0, 3.0, 600001);
    auto before = find_peaks(spectrum_at(hc - 1e-3, lambda, grid));
    auto after = find_peaks(spectrum_at(hc + 5e-3, lambda, grid));
    ASSERT_EQ(before.size(), 1u);
    EXPECT_LT(std::abs(before[0].nu), 0.1);
    ASSERT_EQ(after.size(), 2u);
    for (const auto& pk : after) EXPECT_NEAR(std::abs(pk.nu), 2 * lambda, 0.2 * lambda);
}

TEST(Peaks, ProminenceFilter) {
    SpectrumResult s;
    s.nu = {0, 1, 2, 3, 4, 5, 6};
    s.t_p = {0, 3, 2.8, 3.1, 0, 1, 0};
    auto pk = find_peaks(s, 0.5);
    ASSERT_EQ(pk.size(), 2u);
    EXPECT_EQ(pk[0].index, 3u);  // the shoulder at 1 is only 0.2 prominent
    EXPECT_EQ(pk[1].index, 5u);
}

}  // namespace
