#include "sle/lattice_mc.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "sle/densities.hpp"
#include "sle/error.hpp"

namespace sle::mc {

namespace {

constexpr double row_height = 0.86602540378443864676;  // sqrt(3)/2

std::mt19937_64 sample_rng(std::uint64_t seed, long sample, std::uint32_t stream) {
    const auto s = static_cast<std::uint64_t>(sample);
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(s), std::uint32_t(s >> 32), stream};
    return std::mt19937_64(seq);
}

void validate(const McConfig& cfg) {
    if (cfg.box_width < 8 || cfg.box_height < 8) fail(ErrorKind::domain, "box must be at least 8 x 8 sites");
    if (!(cfg.spacing > 0.0)) fail(ErrorKind::domain, "lattice spacing must be positive");
    if (cfg.p != 0.5) fail(ErrorKind::domain, "only p = 1/2 (critical site percolation) is supported");
    if (cfg.n_samples < 2) fail(ErrorKind::domain, "need at least two samples");
}

void fill_occupation(const McConfig& cfg, long sample, std::vector<std::uint8_t>& occ) {
    const std::size_t n = std::size_t(cfg.box_width) * cfg.box_height;
    occ.resize(n);
    auto rng = sample_rng(cfg.seed, sample, 1);
    std::size_t i = 0;
    while (i < n) {
        std::uint64_t bits = rng();
        for (int b = 0; b < 64 && i < n; ++b, ++i) {
            occ[i] = bits & 1u;
            bits >>= 1;
        }
    }
}

int find(std::vector<int>& parent, int i) {
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

void unite(std::vector<int>& parent, int a, int b) {
    a = find(parent, a);
    b = find(parent, b);
    if (a == b) return;
    if (a < b)
        parent[b] = a;
    else
        parent[a] = b;
}

// Union over the three "forward" bonds (right, and the two in the row above).
void union_sites(int W, int H, std::span<const std::uint8_t> occ, std::vector<int>& parent) {
    parent.resize(occ.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (int r = 0; r < H; ++r) {
        const int shift = r & 1;  // odd rows connect up to (c, c+1), even rows to (c-1, c)
        const std::uint8_t* row = occ.data() + std::size_t(r) * W;
        const std::uint8_t* up = r + 1 < H ? row + W : nullptr;
        for (int c = 0; c < W; ++c) {
            if (!row[c]) continue;
            const int i = r * W + c;
            if (c + 1 < W && row[c + 1]) unite(parent, i, i + 1);
            if (up) {
                const int c0 = c - 1 + shift;
                if (c0 >= 0 && up[c0]) unite(parent, i, i + W - c + c0);
                const int c1 = c + shift;
                if (c1 < W && up[c1]) unite(parent, i, i + W - c + c1);
            }
        }
    }
}

template <class ColorFn>
std::vector<cplx> trace_impl(const Lattice& lat, ColorFn&& black, long max_steps) {
    // start on the virtual row below the box, straddling x = 0
    std::pair<int, int> L{lat.W / 2 - 1, -1}, R{lat.W / 2, -1};
    std::vector<cplx> path;
    for (long step = 0; step < max_steps; ++step) {
        const cplx pl = lat.pos(L.first, L.second), pr = lat.pos(R.first, R.second);
        const cplx fwd = (pr - pl) * cplx(0.0, 1.0);
        const cplx mid = 0.5 * (pl + pr);
        const auto nl = lat.neighbours(L.first, L.second);
        const auto nr = lat.neighbours(R.first, R.second);
        std::pair<int, int> X{0, 0};
        bool found = false;
        for (const auto& a : nl) {
            if (std::find(nr.begin(), nr.end(), a) == nr.end()) continue;
            const cplx d = lat.pos(a.first, a.second) - mid;
            if ((d * std::conj(fwd)).real() > 0.0) {
                X = a;
                found = true;
            }
        }
        if (!found) fail(ErrorKind::domain, "interface tracing lost its forward site");
        path.push_back((pl + pr + lat.pos(X.first, X.second)) / 3.0);
        if (black(X.first, X.second))
            L = X;
        else
            R = X;
        if (!lat.inside(L.first, L.second) && !lat.inside(R.first, R.second)) {
            if (L.second < 0 || R.second < 0)
                fail(ErrorKind::domain, "path-exit anomaly: interface left through the bottom boundary");
            return path;
        }
    }
    fail(ErrorKind::domain, "path-exit anomaly: interface did not leave the box");
}

// Outside the box, sites left of the midline are black and the rest white.
bool boundary_black(const Lattice& lat, int col, int row) { return lat.x(col, row) < 0.0; }

void check_probe(const Lattice& lat, cplx z) {
    const double margin = 5.0 * lat.a;
    const double xmax = 0.5 * lat.W * lat.a - margin, ytop = lat.y(lat.H - 1) - margin;
    if (std::abs(z.real()) > xmax || z.imag() <= 0.0 || z.imag() > ytop)
        fail(ErrorKind::domain, "probe (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                                    ") is outside the box or within 5 spacings of its side or top");
}

McEstimate finish(std::span<const cplx> probes, const std::vector<long>& hits, const McConfig& cfg) {
    McEstimate est;
    est.probes.assign(probes.begin(), probes.end());
    est.n_samples = cfg.n_samples;
    est.seed = cfg.seed;
    const double n = double(cfg.n_samples);
    for (long h : hits) {
        const double m = h / n;
        // sample standard deviation of a 0/1 variable, divided by sqrt(n)
        const double sd = std::sqrt(std::max(0.0, m * (1.0 - m) * n / (n - 1.0)));
        est.means.push_back(m);
        est.std_errors.push_back(sd / std::sqrt(n));
    }
    return est;
}

template <class Work>
std::vector<long> run_samples(long n_samples, std::size_t n_probes, int threads, Work&& work) {
    const int workers = int(std::min<long>(densities::worker_count(threads), n_samples));
    std::vector<std::vector<long>> partial(workers, std::vector<long>(n_probes, 0));
    auto body = [&](int w) {
        const long lo = n_samples * w / workers, hi = n_samples * (w + 1) / workers;
        work(lo, hi, partial[w]);
    };
    if (workers == 1) {
        body(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(body, w);
        for (auto& t : pool) t.join();
    }
    // integer counts: the sum does not depend on how samples were split
    std::vector<long> total(n_probes, 0);
    for (const auto& p : partial)
        for (std::size_t i = 0; i < n_probes; ++i) total[i] += p[i];
    return total;
}

}  // namespace

double Lattice::y(int row) const { return (row + 0.5) * row_height * a; }

int Lattice::nearest(cplx z) const {
    const int r0 = static_cast<int>(std::lround(z.imag() / (row_height * a) - 0.5));
    int best = -1;
    double bd = INFINITY;
    for (int r = r0 - 1; r <= r0 + 1; ++r) {
        const int c0 = static_cast<int>(std::lround(z.real() / a + 0.5 * W - 0.5 * (r & 1)));
        for (int c = c0 - 1; c <= c0 + 1; ++c) {
            if (!inside(c, r)) continue;
            const double d = std::abs(pos(c, r) - z);
            if (d < bd) {
                bd = d;
                best = index(c, r);
            }
        }
    }
    if (best < 0 || bd > a) fail(ErrorKind::domain, "point lies outside the lattice box");
    return best;
}

std::array<std::pair<int, int>, 6> Lattice::neighbours(int c, int r) const {
    const int s = r & 1;
    return {{{c - 1, r}, {c + 1, r}, {c - 1 + s, r - 1}, {c + s, r - 1}, {c - 1 + s, r + 1}, {c + s, r + 1}}};
}

std::vector<std::uint8_t> sample_occupation(const McConfig& cfg, long sample) {
    std::vector<std::uint8_t> occ;
    fill_occupation(cfg, sample, occ);
    return occ;
}

std::vector<int> cluster_labels_union_find(int W, int H, std::span<const std::uint8_t> occ) {
    std::vector<int> parent;
    union_sites(W, H, occ, parent);
    std::vector<int> label(occ.size(), -1);
    for (std::size_t i = 0; i < occ.size(); ++i)
        if (occ[i]) label[i] = find(parent, int(i));  // roots are the smallest index by construction
    return label;
}

std::vector<int> cluster_labels_bfs(int W, int H, std::span<const std::uint8_t> occ) {
    const Lattice lat{W, H, 1.0};
    std::vector<int> label(occ.size(), -1);
    for (int start = 0; start < int(occ.size()); ++start) {
        if (!occ[start] || label[start] >= 0) continue;
        std::deque<int> q{start};
        label[start] = start;
        while (!q.empty()) {
            const int i = q.front();
            q.pop_front();
            for (const auto& [c, r] : lat.neighbours(i % W, i / W)) {
                if (!lat.inside(c, r)) continue;
                const int j = lat.index(c, r);
                if (occ[j] && label[j] < 0) {
                    label[j] = start;
                    q.push_back(j);
                }
            }
        }
    }
    return label;
}

McEstimate sample_connectivity(const McConfig& cfg, std::span<const cplx> probes, int threads) {
    validate(cfg);
    const Lattice lat{cfg.box_width, cfg.box_height, cfg.spacing};
    const auto [x1, x2] = cfg.wired_interval;
    if (!(x1 < x2) || x1 < lat.x(0, 0) || x2 > lat.x(lat.W - 1, 0))
        fail(ErrorKind::domain, "wired interval must be a non-empty segment of the bottom row");
    std::vector<int> wired;
    for (int c = 0; c < lat.W; ++c)
        if (lat.x(c, 0) >= x1 && lat.x(c, 0) <= x2) wired.push_back(c);
    if (wired.empty()) fail(ErrorKind::domain, "wired interval contains no site");
    std::vector<int> sites;
    for (const cplx& z : probes) {
        check_probe(lat, z);
        sites.push_back(lat.nearest(z));
    }
    const auto hits = run_samples(cfg.n_samples, probes.size(), threads, [&](long lo, long hi, std::vector<long>& acc) {
        std::vector<std::uint8_t> occ;
        std::vector<int> parent;
        for (long s = lo; s < hi; ++s) {
            fill_occupation(cfg, s, occ);
            for (int c : wired) occ[c] = 1;
            union_sites(lat.W, lat.H, occ, parent);
            const int root = find(parent, wired.front());
            for (std::size_t i = 0; i < sites.size(); ++i)
                if (occ[sites[i]] && find(parent, sites[i]) == root) ++acc[i];
        }
    });
    return finish(probes, hits, cfg);
}

std::vector<cplx> trace_interface(int W, int H, double a, std::span<const std::uint8_t> occ) {
    const Lattice lat{W, H, a};
    if (occ.size() != std::size_t(W) * H) fail(ErrorKind::domain, "occupation size does not match the box");
    auto black = [&](int c, int r) { return lat.inside(c, r) ? occ[lat.index(c, r)] != 0 : boundary_black(lat, c, r); };
    return trace_impl(lat, black, 8L * W * H + 64);
}

std::vector<cplx> trace_interface(const McConfig& cfg, long sample) {
    return trace_interface(cfg.box_width, cfg.box_height, cfg.spacing, sample_occupation(cfg, sample));
}

bool passes_left(std::span<const cplx> path, cplx probe) {
    // parity of crossings of the downward vertical ray; the tiny offset keeps
    // the ray off the path's vertices
    const double px = probe.real() + 1e-7, py = probe.imag();
    int crossings = 0;
    for (std::size_t k = 1; k < path.size(); ++k) {
        const cplx p = path[k - 1], q = path[k];
        if ((p.real() - px) * (q.real() - px) >= 0.0) continue;
        const double t = (px - p.real()) / (q.real() - p.real());
        if (p.imag() + t * (q.imag() - p.imag()) < py) ++crossings;
    }
    // the path starts on the midline below the probe, so right of it the
    // parity is even exactly when the path went to the left
    return (px > 0.0) == (crossings % 2 == 0);
}

McEstimate trace_interface_lpp(const McConfig& cfg, std::span<const cplx> probes, int threads) {
    validate(cfg);
    const Lattice lat{cfg.box_width, cfg.box_height, cfg.spacing};
    for (const cplx& z : probes) check_probe(lat, z);
    const std::size_t n = std::size_t(lat.W) * lat.H;
    const auto hits = run_samples(cfg.n_samples, probes.size(), threads, [&](long lo, long hi, std::vector<long>& acc) {
        // colours are drawn lazily, in the order the tracer first touches sites
        std::vector<std::uint32_t> stamp(n, 0);
        std::vector<std::uint8_t> colour(n, 0);
        std::uint32_t tag = 0;
        for (long s = lo; s < hi; ++s) {
            if (++tag == 0) {
                std::fill(stamp.begin(), stamp.end(), 0);
                tag = 1;
            }
            auto rng = sample_rng(cfg.seed, s, 2);
            std::uint64_t bits = 0;
            int left = 0;
            auto black = [&](int c, int r) -> bool {
                if (!lat.inside(c, r)) return boundary_black(lat, c, r);
                const int i = lat.index(c, r);
                if (stamp[i] != tag) {
                    if (left == 0) {
                        bits = rng();
                        left = 64;
                    }
                    colour[i] = bits & 1u;
                    bits >>= 1;
                    --left;
                    stamp[i] = tag;
                }
                return colour[i] != 0;
            };
            const auto path = trace_impl(lat, black, 8L * lat.W * lat.H + 64);
            for (std::size_t i = 0; i < probes.size(); ++i)
                if (passes_left(path, probes[i])) ++acc[i];
        }
    });
    return finish(probes, hits, cfg);
}

ShapeFit fit_shape(const McEstimate& est, std::span<const double> f) {
    if (est.means.size() != f.size() || est.std_errors.size() != f.size())
        fail(ErrorKind::domain, "fit_shape: estimate and formula lengths differ");
    if (f.empty()) fail(ErrorKind::domain, "fit_shape: no data");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!(f[i] > 0.0)) fail(ErrorKind::domain, "fit_shape: formula values must be positive");
        const double s = std::max(est.std_errors[i], 1e-9);
        num += est.means[i] * f[i] / (s * s);
        den += f[i] * f[i] / (s * s);
    }
    const double c = num / den;
    if (!(c != 0.0) || !std::isfinite(c)) fail(ErrorKind::domain, "fit_shape: degenerate (all-zero) estimate");
    double ss = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double r = (est.means[i] - c * f[i]) / (c * f[i]);
        ss += r * r;
    }
    return {c, std::sqrt(ss / f.size())};
}

}  // namespace sle::mc
