#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dlmg/dlmg.hpp"

using namespace dlmg;

namespace {

LMGParams params(double h, double lambda, double gb = 0.2) {
    LMGParams p;
    p.h = h;
    p.lambda = lambda;
    p.gamma_b = gb;
    p.gamma_a = 0.01;
    return p;
}

double max_abs(const std::array<double, 3>& v) {
    return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

const FixedPoint* find(const std::vector<FixedPoint>& fps, Branch b) {
    for (const auto& fp : fps)
        if (fp.branch == b) return &fp;
    return nullptr;
}

TEST(Flow, NorthPoleIsFixed) {
    for (double l : {0.0, 0.5, 3.0}) EXPECT_EQ(max_abs(flow(params(0.7, l), BlochState{})), 0.0);
}

TEST(Flow, PreservesTheNorm) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    LMGParams p = params(1.0, 1.7);
    for (int i = 0; i < 1000; ++i) {
        BlochState s{g(rng), g(rng), g(rng)};
        double n = s.norm();
        s = {s.x / n, s.y / n, s.z / n};
        auto f = flow(p, s);
        EXPECT_LE(std::abs(s.x * f[0] + s.y * f[1] + s.z * f[2]), 1e-12);
    }
}

TEST(Flow, JacobianMatchesFiniteDifferences) {
    LMGParams p = params(0.8, 1.9, 0.3);
    BlochState s{0.3, -0.4, std::sqrt(1 - 0.25)};
    auto J = flow_jacobian(p, s);
    const double e = 1e-6;
    for (int k = 0; k < 3; ++k) {
        BlochState a = s, b = s;
        double* pa[] = {&a.x, &a.y, &a.z};
        double* pb[] = {&b.x, &b.y, &b.z};
        *pa[k] += e;
        *pb[k] -= e;
        auto fa = flow(p, a), fb = flow(p, b);
        for (int r = 0; r < 3; ++r) EXPECT_NEAR(J[r][k], (fa[r] - fb[r]) / (2 * e), 1e-8);
    }
}

TEST(FixedPoints, NormalPhaseOnly) {
    auto fps = fixed_points(params(1.0, 0.5));
    ASSERT_EQ(fps.size(), 1u);
    EXPECT_EQ(fps[0].branch, Branch::normal);
    EXPECT_TRUE(fps[0].stable);
}

TEST(FixedPoints, BrokenBranchValues) {
    LMGParams p = params(1.0, 2.0);
    auto fps = fixed_points(p);
    const FixedPoint* bp = find(fps, Branch::broken_plus);
    const FixedPoint* bm = find(fps, Branch::broken_minus);
    ASSERT_TRUE(bp && bm);
    EXPECT_NEAR(bp->aux_Lambda, 3.98997487, 1e-8);
    EXPECT_NEAR(bp->state.z, 0.50125, 1e-5);
    EXPECT_NEAR(bp->state.x, 0.86422, 1e-5);
    EXPECT_NEAR(bp->state.y, 0.04332, 1e-5);
    EXPECT_LE(max_abs(flow(p, bp->state)), 1e-12);
    EXPECT_TRUE(bp->stable);
    EXPECT_FALSE(find(fps, Branch::normal)->stable);
    // mirror symmetry
    EXPECT_EQ(bm->state.x, -bp->state.x);
    EXPECT_EQ(bm->state.y, -bp->state.y);
    EXPECT_EQ(bm->state.z, bp->state.z);
    EXPECT_NEAR(bp->state.norm(), 1.0, 1e-12);
}

TEST(FixedPoints, NegativeFieldKeepsNormal) {
    auto fps = fixed_points(params(-0.5, 1.0));
    int stable = 0;
    for (const auto& fp : fps) stable += fp.stable;
    EXPECT_EQ(stable, 1);
    EXPECT_TRUE(find(fps, Branch::normal)->stable);
}

TEST(FixedPoints, BelowGammaBOmitsBrokenWithDiagnostic) {
    std::string why;
    auto fps = fixed_points(params(0.001, 0.1, 0.2), &why);
    EXPECT_EQ(fps.size(), 1u);
    EXPECT_FALSE(why.empty());
}

TEST(FixedPoints, BifurcationIsSharp) {
    LMGParams p = params(1.0, 0.0);
    double lc = critical_points(p).lambda_c;
    p.lambda = lc * (1 - 1e-9);
    EXPECT_EQ(fixed_points(p).size(), 1u);
    p.lambda = lc * (1 + 1e-9);
    auto fps = fixed_points(p);
    ASSERT_EQ(fps.size(), 3u);
    EXPECT_LE(std::abs(find(fps, Branch::broken_plus)->state.x), 1e-4);
}

TEST(FixedPoints, BistableWindowPrefersNormal) {
    LMGParams p = params(0.005, 1.0);  // h_c = 0.0101
    auto fps = fixed_points(p);
    EXPECT_EQ(fps.size(), 3u);
    EXPECT_TRUE(find(fps, Branch::normal)->stable);
    EXPECT_TRUE(find(fps, Branch::broken_plus)->stable);
    EXPECT_EQ(physical_fixed_point(p).branch, Branch::normal);
}

TEST(FixedPoints, FirstOrderJumpInZ) {
    LMGParams p = params(0.0, 1.0);
    double hc = critical_points(p).h_c;
    p.h = hc * (1 - 1e-6);
    double below = physical_fixed_point(p).state.z;
    p.h = hc * (1 + 1e-6);
    FixedPoint above = physical_fixed_point(p);
    EXPECT_EQ(below, 1.0);
    EXPECT_NE(above.branch, Branch::normal);
    EXPECT_NEAR(below - above.state.z, 1.0 - 2 * hc / broken_Lambda(1.0, 0.2), 1e-5);
}

TEST(FixedPoints, ScaleInvariant) {
    auto a = physical_fixed_point(params(1.0, 2.0, 0.2));
    auto b = physical_fixed_point(params(3.0, 6.0, 0.6));
    EXPECT_NEAR(a.state.x, b.state.x, 1e-13);
    EXPECT_NEAR(a.state.y, b.state.y, 1e-13);
    EXPECT_NEAR(a.state.z, b.state.z, 1e-13);
}

TEST(CriticalPointsTest, Values) {
    CriticalPoints c = critical_points(params(1.0, 1.0));
    EXPECT_NEAR(c.lambda_c, 1.01, 1e-14);
    EXPECT_NEAR(c.h_c, 0.0101020514, 1e-9);
    EXPECT_EQ(c.lambda_prime, 1.0);
    EXPECT_NEAR(c.lambda_dprime, 1.0149379340141889, 1e-13);
    CriticalPoints free = critical_points(params(1.0, 1.0, 0.0));
    EXPECT_EQ(free.lambda_c, 1.0);
    EXPECT_EQ(free.h_c, 0.0);
    EXPECT_THROW(critical_points(params(0.0, 0.1, 0.2)), DomainError);
}

TEST(CriticalPointsTest, Bounds) {
    for (double gb : {0.0, 0.1, 0.5})
        for (double l : {0.6, 1.0, 4.0}) {
            CriticalPoints c = critical_points(params(0.9, l, gb));
            EXPECT_GE(c.lambda_c, 0.9);
            EXPECT_GE(c.h_c, 0.0);
            EXPECT_LE(c.h_c, l / 2);
        }
}

TEST(Bloch, NorthPoleStays) {
    BlochTrajectory tr = integrate_bloch(params(1.0, 2.0), BlochState{}, 10.0);
    EXPECT_EQ(tr.states.back().z, 1.0);
}

TEST(Bloch, ConvergesToBrokenBranch) {
    LMGParams p = params(1.0, 2.0);
    double e = 1e-3;
    BlochState s0{e, 0.0, std::sqrt(1 - e * e)};
    BlochTrajectory tr = integrate_bloch(p, s0, 400.0);
    const BlochState& f = tr.states.back();
    FixedPoint bp = *find(fixed_points(p), Branch::broken_plus);
    double sgn = f.x > 0 ? 1.0 : -1.0;
    EXPECT_NEAR(f.x, sgn * bp.state.x, 1e-6);
    EXPECT_NEAR(f.y, sgn * bp.state.y, 1e-6);
    EXPECT_NEAR(f.z, bp.state.z, 1e-6);
    for (const auto& s : tr.states) EXPECT_NEAR(s.norm(), 1.0, 1e-9);
}

TEST(Bloch, NormalBasin) {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g;
    LMGParams p = params(1.0, 0.5);
    for (int i = 0; i < 20; ++i) {
        BlochState s{g(rng), g(rng), g(rng)};
        double n = s.norm();
        s = {s.x / n, s.y / n, s.z / n};
        if (s.z < -0.999) continue;  // the south pole is an (unstable) fixed point as well
        BlochTrajectory tr = integrate_bloch(p, s, 400.0);
        EXPECT_NEAR(tr.states.back().z, 1.0, 1e-6) << "seed " << i;
    }
    EXPECT_THROW(integrate_bloch(p, BlochState{1, 1, 1}, 1.0), DomainError);
}

}  // namespace
