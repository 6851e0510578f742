#include "sumdil/dilate_const.hpp"
#include "sumdil/lattice_density.hpp"
#include "sumdil/matrix_analysis.hpp"
#include "sumdil/sumset.hpp"
#include "sumdil/symmetrize.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace sumdil;

namespace {

PointSet random_points(std::size_t n, std::int64_t r, std::uint64_t seed)
{
    std::mt19937_64 g(seed);
    std::uniform_int_distribution<std::int64_t> c(-r, r);
    std::vector<IVec> pts;
    for (std::size_t i = 0; i < n; ++i)
        pts.push_back({c(g), c(g)});
    return PointSet(2, pts);
}

void BM_HConstantQuadratic(benchmark::State& st)
{
    auto sys = make_system("t^2-2", {"t"});
    for (auto _ : st)
        benchmark::DoNotOptimize(h_constant(sys, 1e-9));
}
BENCHMARK(BM_HConstantQuadratic);

void BM_HConstantCubic(benchmark::State& st)
{
    auto sys = make_system("t^3-2", {"t"});
    for (auto _ : st)
        benchmark::DoNotOptimize(h_constant(sys, 1e-9));
}
BENCHMARK(BM_HConstantCubic);

void BM_LinearSumset(benchmark::State& st)
{
    auto a = random_points(static_cast<std::size_t>(st.range(0)), 4 * st.range(0), 7);
    auto mats = dilate_matrices(make_system("t^2-2", {"t"}), quadratic_basis(2));
    SumsetOptions opt;
    opt.threads = static_cast<unsigned>(st.range(1));
    for (auto _ : st)
        benchmark::DoNotOptimize(linear_sumset(a, mats, opt));
    st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_LinearSumset)->ArgsProduct({{100, 400, 1600}, {1, 4}})->Unit(benchmark::kMillisecond);

void BM_ExtremalSet(benchmark::State& st)
{
    auto sys = make_system("t^2-2", {"t"});
    auto basis = quadratic_basis(2);
    for (auto _ : st)
        benchmark::DoNotOptimize(extremal_set(sys, basis, st.range(0)));
}
BENCHMARK(BM_ExtremalSet)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_LatticeDensity(benchmark::State& st)
{
    std::mt19937_64 g(3);
    std::vector<IVec> res;
    for (std::int64_t x = 0; x < 60; ++x)
        if (g() % 2)
            res.push_back({x});
    PeriodicSet a(IntegerLattice::scaled(1, 60), res);
    Flag f({IntegerLattice::scaled(1, 12), IntegerLattice::scaled(1, 6), IntegerLattice::scaled(1, 2)});
    for (auto _ : st)
        benchmark::DoNotOptimize(lattice_density(a, f));
}
BENCHMARK(BM_LatticeDensity);

void BM_HermiteNormalForm(benchmark::State& st)
{
    std::mt19937_64 g(5);
    std::uniform_int_distribution<std::int64_t> c(-1000, 1000);
    std::vector<IVec> gens;
    for (int i = 0; i < 8; ++i) {
        IVec v(4);
        for (auto& x : v)
            x = c(g);
        gens.push_back(v);
    }
    for (auto _ : st)
        benchmark::DoNotOptimize(IntegerLattice::hnf(gens, 4));
}
BENCHMARK(BM_HermiteNormalForm);

void BM_MatrixAnalysis(benchmark::State& st)
{
    MatrixFamily fam({IntMatrix{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}, IntMatrix{{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}},
                      IntMatrix{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}}});
    for (auto _ : st)
        benchmark::DoNotOptimize(analyze(fam));
}
BENCHMARK(BM_MatrixAnalysis)->Unit(benchmark::kMillisecond);

void BM_VoxelDiskRotation(benchmark::State& st)
{
    VoxelSet disk = VoxelSet::disk(0, 0, 1, make_rat(1, Int(static_cast<long>(st.range(0)))));
    EigenStructure e{{EigenBlock{2, {1.0, 1.0}, {0.0, 0.7}}}};
    for (auto _ : st)
        benchmark::DoNotOptimize(verify_cts_bound(disk, e));
}
BENCHMARK(BM_VoxelDiskRotation)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Steiner(benchmark::State& st)
{
    VoxelSet a(random_points(20000, 200, 11), Rat(1, 64));
    for (auto _ : st) {
        benchmark::DoNotOptimize(steiner_1d(a, 0));
        benchmark::DoNotOptimize(ball_rearrange_2d(a, 0, 1));
    }
}
BENCHMARK(BM_Steiner)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
