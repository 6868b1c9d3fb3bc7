#include <gtest/gtest.h>

#include <cmath>

#include "dlmg/dlmg.hpp"

using namespace dlmg;

namespace {

LMGParams params(int n, int gamma, double h, double lambda, double ga = 0.0, double gb = 0.0) {
    LMGParams p;
    p.n_atoms = n;
    p.gamma_anisotropy = gamma;
    p.h = h;
    p.lambda = lambda;
    p.gamma_a = ga;
    p.gamma_b = gb;
    return p;
}

TEST(Builders, FreeFieldLimit) {
    DickeAlgebra a = build_algebra(2);
    LindbladSpec s = build_gamma0(params(2, 0, 1.0, 0.0), a);
    DenseMat want = DenseMat::Zero(3, 3);
    want(0, 0) = -2.0;
    want(2, 2) = 2.0;
    EXPECT_LE((s.hamiltonian().dense() - want).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Builders, Gamma0TermsAndRates) {
    DickeAlgebra a = build_algebra(4);
    LindbladSpec s = build_gamma0(params(4, 0, 0.0, 1.0, 0.3, 0.5), a);
    EXPECT_LE(commutator(s.hamiltonian(), a.jx).max_abs(), 1e-12);
    ASSERT_EQ(s.dissipators().size(), 2u);
    EXPECT_DOUBLE_EQ(s.dissipators()[0].rate, 0.3 / 4);
    EXPECT_LE(max_abs_diff(s.dissipators()[0].collapse, 2.0 * a.jx), 1e-15);
    EXPECT_DOUBLE_EQ(s.dissipators()[1].rate, 0.5 / 4);
    EXPECT_LE(max_abs_diff(s.dissipators()[1].collapse, a.jplus), 1e-15);
}

TEST(Builders, Gamma0GroundStateNondegenerate) {
    DickeAlgebra a = build_algebra(50);
    LindbladSpec s = build_gamma0(params(50, 0, 1.0, 1.0), a);
    EXPECT_LE(s.hamiltonian().hermiticity_error(), 1e-12);
    Eigen::SelfAdjointEigenSolver<DenseMat> es(s.hamiltonian().dense());
    EXPECT_GT(es.eigenvalues()(1) - es.eigenvalues()(0), 1e-3);
}

TEST(Builders, ConventionalMatchesLadderExpansion) {
    DickeAlgebra a = build_algebra(2);
    LindbladSpec s = build_conventional(params(2, -1, 0.0, 1.0, 0.2, 0.1), a);
    Operator want = -1.0 * (0.5 * (a.jplus * a.jplus + a.jminus * a.jminus));  // (2/N) = 1
    EXPECT_LE(max_abs_diff(s.hamiltonian(), want), 1e-14);
    EXPECT_LE(max_abs_diff(s.dissipators()[0].collapse, a.jplus), 0.0);
    EXPECT_LE(max_abs_diff(s.dissipators()[1].collapse, a.jminus), 0.0);
}

TEST(Builders, ConventionalAndIsotropicKeepParity) {
    DickeAlgebra a = build_algebra(10);
    Operator P = a.parity();
    for (int g : {-1, 1}) {
        LindbladSpec s = build_model(params(10, g, 0.7, 1.3, 0.1, 0.2), a);
        EXPECT_LE(commutator(s.hamiltonian(), P).max_abs(), 1e-12);
    }
}

TEST(Builders, IsotropicConservesJz) {
    for (int n : {1, 3, 8, 30}) {
        DickeAlgebra a = build_algebra(n);
        LindbladSpec s = build_isotropic(params(n, 1, 0.4, 1.7), a);
        EXPECT_LE(commutator(s.hamiltonian(), a.jz).max_abs(), 1e-12);
    }
}

TEST(Builders, IsotropicIsCasimirMinusJz2) {
    DickeAlgebra a = build_algebra(2);
    LindbladSpec s = build_isotropic(params(2, 1, 0.0, 1.0), a);
    Operator want = -1.0 * (a.j * (a.j + 1) * a.identity() - a.jz * a.jz);
    EXPECT_LE(max_abs_diff(s.hamiltonian(), want), 1e-14);
}

// At lambda = 0 the isotropic and gamma = 0 models share H and the
// J+ term; the Gamma_a channels differ (D[J-] vs D[2Jx]) so it is set to 0.
TEST(Builders, IsotropicEqualsGamma0WithoutInteraction) {
    DickeAlgebra a = build_algebra(6);
    LindbladSpec iso = build_isotropic(params(6, 1, 1.0, 0.0, 0.0, 0.2), a);
    LindbladSpec g0 = build_gamma0(params(6, 0, 1.0, 0.0, 0.0, 0.2), a);
    EXPECT_LE((DenseMat(superoperator(iso)) - DenseMat(superoperator(g0))).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Builders, RejectMismatches) {
    DickeAlgebra a = build_algebra(3);
    EXPECT_THROW(build_gamma0(params(4, 0, 1.0, 1.0), a), DimensionError);
    EXPECT_THROW(build_gamma0(params(3, 1, 1.0, 1.0), a), DomainError);
    EXPECT_THROW(build_model(params(3, 0, 1.0, 1.0, -0.1, 0.0), a), DomainError);
    EXPECT_THROW(build_model(params(3, 2, 1.0, 1.0), a), DomainError);
}

TEST(Builders, ScaleCovariance) {
    DickeAlgebra a = build_algebra(5);
    const double s = 3.5;
    LindbladSpec one = build_gamma0(params(5, 0, 1.0, 1.3, 0.01, 0.2), a);
    LindbladSpec scaled = build_gamma0(params(5, 0, s, s * 1.3, s * 0.01, s * 0.2), a);
    DenseMat L1(superoperator(one)), Ls(superoperator(scaled));
    EXPECT_LE((Ls - s * L1).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(EffectiveParams, AdiabaticRatesOfTheApparatus) {
    const double k = 2 * M_PI * 1e3;  // kHz
    auto [La, Ga] = adiabatic_rates(250 * k, 25 * k, 2500 * k);
    EXPECT_NEAR(La / k, 25.0, 0.5);
    EXPECT_NEAR(Ga / k, 0.25, 0.01);
    auto [Lb, Gb] = adiabatic_rates(25 * k, 250 * k, 0.0);
    EXPECT_EQ(Lb, 0.0);
    EXPECT_NEAR(Gb / k, 2.5, 1e-12);
    // both come from the same ratio
    EXPECT_NEAR(La * 25 * k, Ga * 2500 * k, 1e-9 * La * 25 * k);
}

TEST(EffectiveParams, NoDriveLeavesBareSplitting) {
    MicroscopicParams m;
    m.delta_r = 5.0;
    m.delta_s = -3.0;
    m.omega_1 = 1.7;
    m.omega_1_prime = 0.4;
    m.kappa_a = m.kappa_b = 1.0;
    m.g_r0 = m.g_s1 = m.g_r1 = m.g_s0 = 0.3;
    m.n_atoms = 100;
    EffectiveParams e = effective_params(m);
    EXPECT_DOUBLE_EQ(e.omega_0, 1.3);
    EXPECT_DOUBLE_EQ(e.h, -0.65);
    EXPECT_EQ(e.lambda_a, 0.0);
    EXPECT_EQ(e.lambda_b, 0.0);
    EXPECT_EQ(e.Gamma_a, 0.0);
}

TEST(EffectiveParams, RatesConsistentWithCouplings) {
    MicroscopicParams m;
    m.delta_r = m.delta_s = 100.0;
    m.rabi_r1 = m.rabi_s0 = m.rabi_s1 = m.rabi_r0 = 2.0;
    m.g_r0 = m.g_s1 = m.g_r1 = m.g_s0 = 0.5;
    m.kappa_a = 0.3;
    m.kappa_b = 15.0;
    m.delta_a_raw = 15.0;
    m.n_atoms = 400;
    EffectiveParams e = effective_params(m);
    EXPECT_NEAR(e.lambda_a, 20.0 * 1.0 / 200.0, 1e-15);
    EXPECT_DOUBLE_EQ(e.alpha_a, 1.0);
    EXPECT_DOUBLE_EQ(e.beta_a, 1.0);
    EXPECT_NEAR(e.Lambda_a * m.kappa_a, e.Gamma_a * m.delta_a_raw, 1e-15);
    EXPECT_GE(e.Gamma_b, 0.0);
    EXPECT_THROW(effective_params(MicroscopicParams{}), DomainError);
}

TEST(EffectiveParams, ConventionalSplit) {
    auto [gp, gm] = conventional_rates(0.4, 0.6, 0.6);
    EXPECT_DOUBLE_EQ(gp, gm);
    EXPECT_THROW(conventional_rates(-1.0, 1.0, 1.0), DomainError);
}

}  // namespace
