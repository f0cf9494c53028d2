// One PASS/FAIL line per acceptance criterion. `--only ID` selects criteria,
// `--list` prints the IDs, `--samples N` shrinks the Monte Carlo runs for smoke tests.
#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "cli.hpp"
#include "sle/densities.hpp"
#include "sle/error.hpp"
#include "sle/lattice_mc.hpp"
#include "verify.hpp"

using namespace sle;
using verify::CheckResult;
using verify::Status;
using cplx = std::complex<double>;

namespace {

struct Criterion {
    std::string id;
    double limit_seconds;
    std::function<std::vector<CheckResult>()> run;
};

long mc_samples = 100000;

CheckResult mc_connectivity() {
    return verify::timed("mc_connectivity", [](CheckResult& r) {
        mc::McConfig cfg;
        cfg.box_width = 512;
        cfg.box_height = 256;
        cfg.wired_interval = {-32.0, 32.0};
        cfg.seed = 1;
        cfg.n_samples = mc_samples;
        const auto probes = cli::default_connectivity_probes(cfg.box_width);
        const auto est = mc::sample_connectivity(cfg, probes);
        std::vector<double> f;
        for (const cplx& p : probes) f.push_back(densities::density(densities::Kind::rho110, 64.0, p, 6.0));
        const auto fit = mc::fit_shape(est, f);
        char buf[160];
        std::snprintf(buf, sizeof buf, "rms relative error %.4f after constant %.4g (25 probes, %ld samples)",
                      fit.rms_rel_error, fit.constant, est.n_samples);
        r.detail = buf;
        if (!(fit.rms_rel_error <= 0.05)) r.status = Status::fail;
    });
}

CheckResult mc_left_passage() {
    return verify::timed("mc_left_passage", [](CheckResult& r) {
        mc::McConfig cfg;
        cfg.box_width = 512;
        cfg.box_height = 256;
        cfg.seed = 3;
        cfg.n_samples = mc_samples;
        const auto probes = cli::default_lpp_probes(cfg.box_width);
        const auto est = mc::trace_interface_lpp(cfg, probes);
        double worst_rel = 0.0, worst_z = 0.0;
        std::string d;
        for (std::size_t i = 0; i < probes.size(); ++i) {
            const double want = densities::left_passage(probes[i], 6.0);
            const double rel = std::abs(est.means[i] / want - 1.0);
            const double z = std::abs(est.means[i] - want) / est.std_errors[i];
            worst_rel = std::max(worst_rel, rel);
            worst_z = std::max(worst_z, z);
            char buf[96];
            std::snprintf(buf, sizeof buf, "%s%.4f+-%.4f vs %.4f", i ? "; " : "", est.means[i], est.std_errors[i], want);
            d += buf;
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, " | max rel %.4f, max |z| %.2f", worst_rel, worst_z);
        r.detail = d + buf;
        if (!(worst_rel <= 0.02)) r.status = Status::fail;
    });
}

CheckResult union_find_vs_bfs() {
    return verify::timed("union_find_vs_bfs", [](CheckResult& r) {
        std::mt19937_64 rng(16);
        std::bernoulli_distribution b(0.5);
        int mismatches = 0;
        for (int t = 0; t < 100; ++t) {
            std::vector<std::uint8_t> occ(16 * 16);
            for (auto& o : occ) o = b(rng);
            if (mc::cluster_labels_union_find(16, 16, occ) != mc::cluster_labels_bfs(16, 16, occ)) ++mismatches;
        }
        r.detail = std::to_string(mismatches) + " mismatches in 100 configurations";
        if (mismatches) r.status = Status::fail;
    });
}

std::vector<Criterion> criteria() {
    using V = std::vector<CheckResult>;
    return {
        {"structure_constants_kappa6", 1.0, [] { return V{verify::kappa6_constants()}; }},
        {"mc_corroboration", 1.0, [] { return V{verify::mc_corroboration()}; }},
        {"ode_residuals", 30.0, [] { return V{verify::ode_residuals(5.3), verify::ode_residuals(6.7)}; }},
        {"crossing_checks", 60.0, [] { return V{verify::second_order_crossing(5.3), verify::third_order_crossing(5.3)}; }},
        {"geometry_invariants", 1.0, [] { return V{verify::geometry_invariants()}; }},
        {"boundary_ladders", 10.0, [] { return V{verify::boundary_ladders(5.3), verify::boundary_ladders(6.7)}; }},
        {"greens_scaling", 1.0,
         [] { return V{verify::greens_scaling(5.3), verify::greens_scaling(6.0), verify::greens_scaling(6.7),
                       verify::greens_kappa6_pair()}; }},
        {"schramm_lpp", 1.0, [] { return V{verify::left_passage_checks()}; }},
        {"mc_connectivity_shape", 600.0, [] { return V{mc_connectivity()}; }},
        {"mc_left_passage", 600.0, [] { return V{mc_left_passage()}; }},
        {"mc_union_find_bfs", 1.0, [] { return V{union_find_vs_bfs()}; }},
        {"bubble_reality", 10.0, [] { return V{verify::bubble_reality(8.0 / 3.0), verify::bubble_reality(6.0)}; }},
    };
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<std::string> only;
    bool list = false;
    app.add_option("--only", only, "criterion ID (repeatable)");
    app.add_flag("--list", list);
    app.add_option("--samples", mc_samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    int failed = 0, ran = 0;
    for (const auto& c : criteria()) {
        if (list) {
            std::printf("%s\n", c.id.c_str());
            continue;
        }
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        ++ran;
        const auto t0 = std::chrono::steady_clock::now();
        const auto results = c.run();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool pass = secs <= c.limit_seconds;
        std::string detail;
        for (const auto& r : results) {
            pass = pass && r.status == Status::pass;
            detail += (detail.empty() ? "" : " || ") + r.name + " " + verify::to_string(r.status) + ": " + r.detail;
        }
        std::printf("%s %s (%.2f s, limit %g s) %s\n", pass ? "PASS" : "FAIL", c.id.c_str(), secs, c.limit_seconds,
                    detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failed;
    }
    if (!list && ran == 0) {
        std::fprintf(stderr, "no criterion matched\n");
        return 2;
    }
    return failed ? 1 : 0;
}
