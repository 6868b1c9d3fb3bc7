#include <benchmark/benchmark.h>

#include "dlmg/dlmg.hpp"

using namespace dlmg;

namespace {

LMGParams second_order(int n, double lambda) {
    LMGParams p;
    p.n_atoms = n;
    p.h = 1.0;
    p.lambda = lambda;
    p.gamma_a = 0.01;
    p.gamma_b = 0.2;
    return p;
}

void BM_SuperoperatorBuild(benchmark::State& st) {
    int n = int(st.range(0));
    DickeAlgebra alg = build_algebra(n);
    LindbladSpec spec = build_model(second_order(n, 1.2), alg);
    for (auto _ : st) benchmark::DoNotOptimize(superoperator(spec));
}
BENCHMARK(BM_SuperoperatorBuild)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_LiouvillianApply(benchmark::State& st) {
    int n = int(st.range(0));
    DickeAlgebra alg = build_algebra(n);
    SparseMat L = superoperator(build_model(second_order(n, 1.2), alg));
    Eigen::VectorXcd x = vectorize(DenseMat::Identity(n + 1, n + 1) / double(n + 1)), y(x.size());
    for (auto _ : st) {
        y.noalias() = L * x;
        benchmark::DoNotOptimize(y.data());
    }
    st.counters["nnz"] = double(L.nonZeros());
}
BENCHMARK(BM_LiouvillianApply)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);

// Matrix-level application without the superoperator, for comparison.
void BM_LiouvillianApplyDense(benchmark::State& st) {
    int n = int(st.range(0));
    DickeAlgebra alg = build_algebra(n);
    LindbladSpec spec = build_model(second_order(n, 1.2), alg);
    DenseMat rho = DenseMat::Identity(n + 1, n + 1) / double(n + 1);
    for (auto _ : st) benchmark::DoNotOptimize(liouvillian_apply(spec, rho));
}
BENCHMARK(BM_LiouvillianApplyDense)->Arg(25)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_SteadyState(benchmark::State& st) {
    int n = int(st.range(0));
    DickeAlgebra alg = build_algebra(n);
    LindbladSpec spec = build_model(second_order(n, 2.0), alg);
    for (auto _ : st) benchmark::DoNotOptimize(steady_state(spec));
}
BENCHMARK(BM_SteadyState)->Arg(10)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Entanglement(benchmark::State& st) {
    DickeAlgebra alg = build_algebra(100);
    DensityMatrix rho = steady_state(build_model(second_order(100, 0.9), alg));
    for (auto _ : st) benchmark::DoNotOptimize(entanglement(rho, alg));
}
BENCHMARK(BM_Entanglement)->Unit(benchmark::kMillisecond);

void BM_QFunction(benchmark::State& st) {
    DickeAlgebra alg = build_algebra(50);
    DensityMatrix rho = steady_state(build_model(second_order(50, 2.0), alg));
    auto th = uniform_grid(0.0, M_PI, 91);
    auto ph = uniform_grid(0.0, 2 * M_PI, 181);
    for (auto _ : st) benchmark::DoNotOptimize(spin_qfunction(rho, alg, th, ph));
}
BENCHMARK(BM_QFunction)->Unit(benchmark::kMillisecond);

void BM_Transmission(benchmark::State& st) {
    const double lambda = 0.93;
    CavityParams cav = probe_cavity(lambda);
    LMGParams p = second_order(1, lambda);
    p.gamma_b = cav.gamma_b();
    FixedPoint fp = physical_fixed_point(p);
    LinearSystem sys = linear_system(p, cav, rotation_angles(fp));
    HPCoefficients k = hp_coefficients(p, fp);
    auto grid = uniform_grid(-3.0, 3.0, int(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(transmission(sys, k, grid));
}
BENCHMARK(BM_Transmission)->Arg(2001)->Arg(600001)->Unit(benchmark::kMillisecond);

void BM_EvolveShort(benchmark::State& st) {
    int n = int(st.range(0));
    DickeAlgebra alg = build_algebra(n);
    LindbladSpec spec = build_model(second_order(n, 0.8), alg);
    DensityMatrix up = DensityMatrix::basis_state(n + 1, 0);
    for (auto _ : st) benchmark::DoNotOptimize(evolve(spec, up, {0.0, 1.0}));
}
BENCHMARK(BM_EvolveShort)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
