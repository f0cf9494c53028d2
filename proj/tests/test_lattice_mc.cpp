#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <set>

#include "sle/densities.hpp"
#include "sle/error.hpp"
#include "sle/lattice_mc.hpp"

using namespace sle;
using namespace sle::mc;

namespace {

std::vector<std::uint8_t> random_occupation(int W, int H, std::mt19937_64& rng, double p = 0.5) {
    std::bernoulli_distribution b(p);
    std::vector<std::uint8_t> occ(std::size_t(W) * H);
    for (auto& o : occ) o = b(rng);
    return occ;
}

McConfig small_config(long n, std::uint64_t seed) {
    McConfig c;
    c.box_width = 64;
    c.box_height = 32;
    c.wired_interval = {-4.0, 4.0};
    c.n_samples = n;
    c.seed = seed;
    return c;
}

bool bitwise_equal(const McEstimate& a, const McEstimate& b) {
    return a.means.size() == b.means.size() &&
           std::memcmp(a.means.data(), b.means.data(), a.means.size() * sizeof(double)) == 0 &&
           std::memcmp(a.std_errors.data(), b.std_errors.data(), a.std_errors.size() * sizeof(double)) == 0;
}

}  // namespace

TEST(Lattice, Geometry) {
    const Lattice lat{8, 6, 2.0};
    EXPECT_DOUBLE_EQ(lat.x(4, 0), 0.0);
    EXPECT_DOUBLE_EQ(lat.x(4, 1), 1.0);
    EXPECT_DOUBLE_EQ(lat.y(0), std::sqrt(3.0) / 2.0);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 8; ++c)
            for (auto [nc, nr] : lat.neighbours(c, r))
                EXPECT_NEAR(std::abs(lat.pos(nc, nr) - lat.pos(c, r)), 2.0, 1e-12);
    EXPECT_EQ(lat.nearest(lat.pos(3, 2)), lat.index(3, 2));
    EXPECT_THROW(lat.nearest({100.0, 1.0}), Error);
}

TEST(Clusters, UnionFindMatchesBfs) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 100; ++t) {
        const auto occ = random_occupation(16, 16, rng);
        EXPECT_EQ(cluster_labels_union_find(16, 16, occ), cluster_labels_bfs(16, 16, occ)) << t;
    }
}

TEST(Clusters, SpanningAndEmpty) {
    std::vector<std::uint8_t> full(16 * 8, 1), empty(16 * 8, 0);
    for (int l : cluster_labels_union_find(16, 8, full)) EXPECT_EQ(l, 0);
    for (int l : cluster_labels_union_find(16, 8, empty)) EXPECT_EQ(l, -1);
}

TEST(Sampling, OccupationIsReproducible) {
    const auto cfg = small_config(10, 5);
    EXPECT_EQ(sample_occupation(cfg, 3), sample_occupation(cfg, 3));
    EXPECT_NE(sample_occupation(cfg, 3), sample_occupation(cfg, 4));
}

TEST(Connectivity, DeterministicAcrossThreadCounts) {
    const auto cfg = small_config(400, 77);
    const std::vector<cplx> probes{{0.0, 3.0}, {5.0, 6.0}, {-9.0, 10.0}};
    const auto a = sample_connectivity(cfg, probes, 1);
    const auto b = sample_connectivity(cfg, probes, 1);
    const auto c = sample_connectivity(cfg, probes, 3);
    EXPECT_TRUE(bitwise_equal(a, b));
    EXPECT_TRUE(bitwise_equal(a, c));
    EXPECT_EQ(a.n_samples, 400);
    EXPECT_EQ(a.seed, 77u);
}

TEST(Connectivity, ProbeOnWiredIntervalAlwaysConnected) {
    const auto cfg = small_config(200, 1);
    const std::vector<cplx> probes{{0.0, 0.4}};
    const auto e = sample_connectivity(cfg, probes, 1);
    EXPECT_EQ(e.means[0], 1.0);
    EXPECT_EQ(e.std_errors[0], 0.0);
}

TEST(Connectivity, DecaysAwayFromInterval) {
    const auto cfg = small_config(2000, 2);
    const std::vector<cplx> probes{{0.0, 4.0}, {0.0, 20.0}};
    const auto e = sample_connectivity(cfg, probes, 1);
    EXPECT_GT(e.means[0], e.means[1]);
}

TEST(Connectivity, RejectsBadInput) {
    auto cfg = small_config(10, 1);
    const std::vector<cplx> outside{{100.0, 5.0}}, ok{{0.0, 5.0}};
    EXPECT_THROW(sample_connectivity(cfg, outside, 1), Error);
    cfg.p = 0.4;
    EXPECT_THROW(sample_connectivity(cfg, ok, 1), Error);
    cfg = small_config(1, 1);
    EXPECT_THROW(sample_connectivity(cfg, ok, 1), Error);
    cfg = small_config(10, 1);
    cfg.wired_interval = {2.0, 1.0};
    EXPECT_THROW(sample_connectivity(cfg, ok, 1), Error);
}

TEST(Interface, SelfAvoidingUnitSteps) {
    std::mt19937_64 rng(31);
    const double step = 1.0 / std::sqrt(3.0);
    for (int t = 0; t < 1000; ++t) {
        const auto occ = random_occupation(16, 12, rng);
        const auto path = trace_interface(16, 12, 1.0, occ);
        ASSERT_GE(path.size(), 2u);
        std::set<std::pair<long, long>> seen;
        for (std::size_t k = 0; k < path.size(); ++k) {
            EXPECT_TRUE(seen.insert({std::lround(path[k].real() * 1e6), std::lround(path[k].imag() * 1e6)}).second)
                << "configuration " << t << " revisits vertex " << k;
            if (k > 0) EXPECT_NEAR(std::abs(path[k] - path[k - 1]), step, 1e-9);
        }
        EXPECT_NEAR(path.front().real(), 0.0, 1.0);
    }
}

TEST(Interface, AllBlackHugsRightSide) {
    // with every interior site black the interface runs up the boundary colour change
    std::vector<std::uint8_t> occ(16 * 12, 1);
    const auto path = trace_interface(16, 12, 1.0, occ);
    EXPECT_TRUE(passes_left(path, {-3.0, 5.0}) == false);
}

TEST(Interface, PassesLeftOfStraightPath) {
    const std::vector<cplx> path{{0.0, 0.0}, {0.0, 10.0}, {0.0, 20.0}};
    EXPECT_TRUE(passes_left(path, {1.0, 5.0}));
    EXPECT_FALSE(passes_left(path, {-1.0, 5.0}));
    const std::vector<cplx> hook{{0.0, 0.0}, {3.0, 2.0}, {3.0, 8.0}, {-3.0, 8.0}, {-3.0, 20.0}};
    EXPECT_FALSE(passes_left(hook, {1.0, 5.0}));
    EXPECT_TRUE(passes_left(hook, {1.0, 10.0}));
}

TEST(LeftPassageMc, SymmetricAndDeterministic) {
    auto cfg = small_config(3000, 4);
    cfg.box_width = 96;
    cfg.box_height = 48;
    const std::vector<cplx> probes{{-6.0, 6.0}, {0.0, 8.0}, {6.0, 6.0}};
    const auto a = trace_interface_lpp(cfg, probes, 1);
    const auto b = trace_interface_lpp(cfg, probes, 2);
    EXPECT_TRUE(bitwise_equal(a, b));
    EXPECT_NEAR(a.means[0] + a.means[2], 1.0, 5.0 * std::hypot(a.std_errors[0], a.std_errors[2]));
    EXPECT_NEAR(a.means[1], 0.5, 5.0 * a.std_errors[1]);
    EXPECT_GT(a.means[2], a.means[0]);
}

TEST(FitShape, ProportionalIsExact) {
    McEstimate e;
    e.means = {0.2, 0.4, 0.6};
    e.std_errors = {0.01, 0.01, 0.01};
    e.probes = {{0, 1}, {0, 2}, {0, 3}};
    const std::vector<double> f{1.0, 2.0, 3.0};
    const auto fit = fit_shape(e, f);
    EXPECT_NEAR(fit.constant, 0.2, 1e-15);
    EXPECT_NEAR(fit.rms_rel_error, 0.0, 1e-14);
}

TEST(FitShape, OnePercentNoise) {
    McEstimate e;
    e.means = {0.2 * 1.01, 0.4 * 0.99, 0.6 * 1.01, 0.8 * 0.99};
    e.std_errors.assign(4, 0.01);
    e.probes.assign(4, cplx(0, 1));
    const std::vector<double> f{1.0, 2.0, 3.0, 4.0};
    const auto fit = fit_shape(e, f);
    EXPECT_NEAR(fit.constant, 0.2, 0.002);
    EXPECT_NEAR(fit.rms_rel_error, 0.01, 0.001);
}

TEST(FitShape, Errors) {
    McEstimate e;
    e.means = {0.2, 0.4};
    e.std_errors = {0.01, 0.01};
    e.probes = {{0, 1}, {0, 2}};
    const std::vector<double> three{1.0, 2.0, 3.0}, zero{0.0, 1.0};
    EXPECT_THROW(fit_shape(e, three), Error);
    EXPECT_THROW(fit_shape(e, zero), Error);
    e.means = {0.0, 0.0};
    const std::vector<double> two{1.0, 2.0};
    EXPECT_THROW(fit_shape(e, two), Error);
}
