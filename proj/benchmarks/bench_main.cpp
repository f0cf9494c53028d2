#include <benchmark/benchmark.h>

#include <random>

#include "sle/densities.hpp"
#include "sle/lattice_mc.hpp"
#include "sle/solutions.hpp"
#include "sle/specfun.hpp"

using namespace sle;
using cplx = std::complex<double>;

static void BM_Hyp2f1(benchmark::State& st) {
    const specfun::HypParams p{0.35, 0.8, 1.45};
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::vector<cplx> zs(256);
    for (auto& z : zs) z = {u(rng), u(rng)};
    std::size_t i = 0;
    for (auto _ : st) benchmark::DoNotOptimize(specfun::hyp2f1(p, zs[i++ & 255]));
}
BENCHMARK(BM_Hyp2f1);

static void BM_Density(benchmark::State& st) {
    const auto kind = static_cast<densities::Kind>(st.range(0));
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-2.0, 2.0), v(0.01, 2.0);
    std::vector<cplx> zs(256);
    for (auto& z : zs) z = {u(rng), v(rng)};
    std::size_t i = 0;
    for (auto _ : st) benchmark::DoNotOptimize(densities::density(kind, 1.0, zs[i++ & 255], 6.0));
    st.SetLabel(densities::to_string(kind));
}
BENCHMARK(BM_Density)->DenseRange(0, 4);

static void BM_Grid100(benchmark::State& st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(
            densities::grid_eval(densities::Kind::rho110, 6.0, 1.0, {-2.0, 2.0, 0.0, 2.0}, 100, 100, 1));
}
BENCHMARK(BM_Grid100)->Unit(benchmark::kMillisecond);

static mc::McConfig mc_config(int W) {
    mc::McConfig c;
    c.box_width = W;
    c.box_height = W / 2;
    c.wired_interval = {-W / 16.0, W / 16.0};
    c.n_samples = 2;
    return c;
}

static void BM_ConnectivitySample(benchmark::State& st) {
    const auto cfg = mc_config(int(st.range(0)));
    const std::vector<cplx> probes{{0.0, cfg.box_width / 16.0}};
    for (auto _ : st) benchmark::DoNotOptimize(mc::sample_connectivity(cfg, probes, 1));
    st.SetItemsProcessed(st.iterations() * cfg.n_samples);
}
BENCHMARK(BM_ConnectivitySample)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_TraceInterface(benchmark::State& st) {
    const auto cfg = mc_config(int(st.range(0)));
    long s = 0;
    for (auto _ : st) benchmark::DoNotOptimize(mc::trace_interface(cfg, s++));
}
BENCHMARK(BM_TraceInterface)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_UnionFind16(benchmark::State& st) {
    const auto occ = mc::sample_occupation(mc_config(16), 0);
    for (auto _ : st) benchmark::DoNotOptimize(mc::cluster_labels_union_find(16, 8, occ));
}
BENCHMARK(BM_UnionFind16);

BENCHMARK_MAIN();
