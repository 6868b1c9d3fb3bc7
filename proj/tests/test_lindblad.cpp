#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "dlmg/dlmg.hpp"
#include "oracles.hpp"

using namespace dlmg;

namespace {

LMGParams params(int n, int gamma, double h, double lambda, double ga, double gb) {
    LMGParams p;
    p.n_atoms = n;
    p.gamma_anisotropy = gamma;
    p.h = h;
    p.lambda = lambda;
    p.gamma_a = ga;
    p.gamma_b = gb;
    return p;
}

TEST(Superoperator, MatchesHandAssembledAtN2) {
    for (int gamma : {-1, 0, 1}) {
        DickeAlgebra a = build_algebra(2);
        LindbladSpec spec = build_model(params(2, gamma, 0.7, 1.3, 0.11, 0.23), a);
        DenseMat mine = DenseMat(superoperator(spec));
        DenseMat ref = oracle::superoperator(spec.hamiltonian().dense(), oracle::dense_ops(spec));
        EXPECT_LE((mine - ref).cwiseAbs().maxCoeff(), 1e-14) << "gamma " << gamma;
    }
}

TEST(Superoperator, ApplyAgreesWithMatrix) {
    std::mt19937_64 rng(2);
    DickeAlgebra a = build_algebra(9);
    LindbladSpec spec = build_model(params(9, 0, 1.0, 1.4, 0.01, 0.2), a);
    DenseMat rho = oracle::random_state(10, rng);
    Eigen::VectorXcd v = superoperator(spec) * vectorize(rho);
    EXPECT_LE((unvectorize(v, 10) - liouvillian_apply(spec, rho)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Superoperator, TraceAndHermiticityPreserved) {
    std::mt19937_64 rng(3);
    for (int gamma : {-1, 0, 1}) {
        DickeAlgebra a = build_algebra(12);
        LindbladSpec spec = build_model(params(12, gamma, 0.4, 2.0, 0.3, 0.5), a);
        DenseMat rho = oracle::random_state(13, rng);
        DenseMat d = liouvillian_apply(spec, rho);
        EXPECT_LE(std::abs(d.trace()), 1e-12);
        EXPECT_LE((d - d.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Superoperator, VectorizeRoundTrip) {
    std::mt19937_64 rng(4);
    DenseMat rho = oracle::random_state(5, rng);
    Eigen::VectorXcd v = vectorize(rho);
    EXPECT_EQ(v(1), rho(1, 0));  // column-stacked
    EXPECT_EQ(unvectorize(v, 5), rho);
    EXPECT_THROW(unvectorize(v, 4), DimensionError);
}

TEST(LindbladSpecTest, RejectsBadInput) {
    DickeAlgebra a = build_algebra(2), b = build_algebra(3);
    EXPECT_THROW(LindbladSpec(a.jplus, {}), DomainError);
    EXPECT_THROW(LindbladSpec(a.jz, {{-1.0, a.jplus}}), DomainError);
    EXPECT_THROW(LindbladSpec(a.jz, {{1.0, b.jplus}}), DimensionError);
}

// Property: the library steady state equals the SVD null vector for every
// small model we throw at it.
TEST(SteadyState, MatchesDenseNullSpaceOracle) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + trial % 3;
        int gamma = (trial / 3) % 3 - 1;
        LMGParams p = params(n, gamma, 0.1 + 2 * u(rng), 3 * u(rng), 0.02 + u(rng), 0.02 + u(rng));
        DickeAlgebra a = build_algebra(n);
        LindbladSpec spec = build_model(p, a);
        SteadyStateReport rep;
        DensityMatrix rho = steady_state(spec, 1e-10, &rep);
        DenseMat ref = oracle::null_state(oracle::superoperator(spec.hamiltonian().dense(), oracle::dense_ops(spec)),
                                          a.dim());
        EXPECT_LE((rho.matrix() - ref).cwiseAbs().maxCoeff(), 1e-10) << "trial " << trial;
        EXPECT_EQ(rep.method, "dense");
        EXPECT_TRUE(rho.check().ok());
    }
}

TEST(SteadyState, SparsePathAgreesWithDensePath) {
    DickeAlgebra a = build_algebra(12);
    LindbladSpec spec = build_model(params(12, 0, 1.0, 1.3, 0.01, 0.2), a);
    SteadyStateOptions dense, sparse;
    dense.dense_max_dim = 100;
    sparse.dense_max_dim = 1;
    SteadyStateReport r1, r2;
    DensityMatrix d = steady_state(spec, dense, &r1);
    DensityMatrix s = steady_state(spec, sparse, &r2);
    EXPECT_EQ(r1.method, "dense");
    EXPECT_EQ(r2.method, "sparse-lu");
    EXPECT_LE((d.matrix() - s.matrix()).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE(r2.residual, 1e-10);
    EXPECT_EQ(r2.uniqueness_sector, "parity-even");
}

TEST(SteadyState, ResidualIsSmallAtN100) {
    DickeAlgebra a = build_algebra(100);
    LindbladSpec spec = build_model(params(100, 0, 1.0, 2.0, 0.01, 0.2), a);
    SteadyStateReport rep;
    DensityMatrix rho = steady_state(spec, 1e-10, &rep);
    EXPECT_LE(rep.residual, 1e-10);
    EXPECT_LE(rep.uniqueness_gap, 1e-8);
    EXPECT_TRUE(rho.check().ok());
}

TEST(SteadyState, FlagsDegenerateNullSpace) {
    // no dissipation: every diagonal state in the H eigenbasis is stationary
    DickeAlgebra small = build_algebra(2);
    EXPECT_THROW(steady_state(LindbladSpec(small.jz, {})), NonUniqueSteadyState);
    DickeAlgebra big = build_algebra(20);
    EXPECT_THROW(steady_state(LindbladSpec(big.jz, {})), NonUniqueSteadyState);
}

TEST(SteadyState, PureDecayGoesToAllDown) {
    DickeAlgebra a = build_algebra(20);
    DensityMatrix rho = steady_state(LindbladSpec(Operator::zero(21), {{1.0, a.jminus}}));
    EXPECT_NEAR(rho(20, 20).real(), 1.0, 1e-10);
}

TEST(Evolve, MatchesMatrixExponential) {
    DickeAlgebra a = build_algebra(3);
    LindbladSpec spec = build_model(params(3, 0, 1.0, 1.5, 0.05, 0.3), a);
    DenseMat L(superoperator(spec));
    DensityMatrix rho0 = DensityMatrix::basis_state(4, 0);
    std::vector<double> times{0.0, 0.7, 2.0, 5.0};
    TrajectoryResult tr = evolve(spec, rho0, times, 1e-11);
    ASSERT_EQ(tr.states.size(), times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        DenseMat prop = (L * times[k]).exp();
        DenseMat ref = unvectorize(prop * vectorize(rho0.matrix()), 4);
        EXPECT_LE((tr.states[k].matrix() - ref).cwiseAbs().maxCoeff(), 1e-8) << "t = " << times[k];
    }
}

TEST(Evolve, ApproachesSteadyState) {
    DickeAlgebra a = build_algebra(6);
    LindbladSpec spec = build_model(params(6, 0, 1.0, 0.8, 0.2, 0.5), a);
    TrajectoryResult tr = evolve(spec, DensityMatrix::basis_state(7, 0), {0.0, 200.0});
    DensityMatrix ss = steady_state(spec);
    EXPECT_LE((tr.states.back().matrix() - ss.matrix()).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Evolve, ObserverColumns) {
    DickeAlgebra a = build_algebra(4);
    LindbladSpec spec = build_model(params(4, 0, 1.0, 1.0, 0.01, 0.2), a);
    EvolveOptions opt;
    opt.keep_states = false;
    opt.columns = {"jz"};
    opt.observer = [&](double, const DensityMatrix& r) { return std::vector<double>{expectation(a.jz, r).real()}; };
    TrajectoryResult tr = evolve(spec, DensityMatrix::basis_state(5, 0), {0.0, 1.0, 2.0}, opt);
    EXPECT_TRUE(tr.states.empty());
    ASSERT_EQ(tr.values.size(), 3u);
    EXPECT_NEAR(tr.values[0][0], 2.0, 1e-14);
    std::ostringstream os;
    write_trajectory_csv(os, tr);
    EXPECT_EQ(os.str().substr(0, 5), "t,jz\n");
}

TEST(Evolve, LambdaZeroKeepsAllUpStationary) {
    DickeAlgebra a = build_algebra(10);
    LindbladSpec spec = build_model(params(10, 0, 1.0, 0.0, 0.0, 0.2), a);
    TrajectoryResult tr = evolve(spec, DensityMatrix::basis_state(11, 0), {0.0, 10.0});
    EXPECT_NEAR(tr.states.back()(0, 0).real(), 1.0, 1e-12);
}

TEST(Ode, ExponentialDecay) {
    using V = Eigen::VectorXd;
    V y0 = V::Ones(1);
    std::vector<double> ts{0.0, 1.0, 3.0};
    std::vector<double> got;
    integrate_dopri5<V>([](double, const V& y, V& d) { d = -y; }, 0.0, y0, ts,
                        [&](double, const V& y) { got.push_back(y(0)); }, {1e-12, 1e-12});
    ASSERT_EQ(got.size(), 3u);
    EXPECT_NEAR(got[1], std::exp(-1.0), 1e-10);
    EXPECT_NEAR(got[2], std::exp(-3.0), 1e-10);
}

}  // namespace
