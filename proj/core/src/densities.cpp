#include "sle/densities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <thread>

#include "sle/error.hpp"
#include "sle/params.hpp"
#include "sle/solutions.hpp"
#include "sle/specfun.hpp"

namespace sle::densities {

namespace {

constexpr double pi = std::numbers::pi;
using specfun::CutSide;

void require_point(double L, cplx z) {
    if (!(L > 0.0) || !std::isfinite(L)) fail(ErrorKind::domain, "L must be positive");
    if (!(z.imag() > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        fail(ErrorKind::domain, "z must lie in the open upper half-plane");
}

void require_cluster_regime(double kappa, const char* kind) {
    if (!(kappa > 4.0 && kappa <= 8.0))
        fail(ErrorKind::domain, std::string(kind) + " needs 4 < kappa <= 8");
}

void require_kappa(double kappa) {
    if (!(kappa > 0.0 && kappa <= 8.0)) fail(ErrorKind::domain, "kappa must lie in (0, 8]");
}

double prefactor(double L, double y, double d_bdy, double d_O) {
    return std::pow(L, -2.0 * d_bdy) * std::pow(2.0 * y, -2.0 * d_O);
}

// Upper arc: 1 - xi = exp(i phi) with phi in (-pi, 0); the lower arc is its conjugate.
cplx arc_point(double phi) { return 1.0 - std::polar(1.0, phi); }

cplx bubble_raw(const BubbleBranch& b, cplx xi, bool inside) {
    const double k = b.kappa;
    if (b.portion == Portion::lower) {
        if (!inside) return solutions::pair_h2(xi, k, CutSide::below);
        return b.c1 * solutions::pair_h1(xi, k, CutSide::above) + b.c2 * solutions::pair_h2(xi, k, CutSide::above);
    }
    if (inside) return solutions::pair_h2(xi, k, CutSide::above);
    return b.c1 * solutions::pair_h1(xi, k, CutSide::below) + b.c2 * solutions::pair_h2(xi, k, CutSide::below);
}

}  // namespace

const char* to_string(Kind kind) {
    switch (kind) {
    case Kind::rho110: return "rho110";
    case Kind::rho112: return "rho112";
    case Kind::rho220: return "rho220";
    case Kind::rho222_lower: return "rho222_lower";
    case Kind::rho224: return "rho224";
    }
    return "unknown";
}

std::optional<Kind> parse_kind(std::string_view name) {
    for (Kind k : {Kind::rho110, Kind::rho112, Kind::rho220, Kind::rho222_lower, Kind::rho224})
        if (name == to_string(k)) return k;
    return std::nullopt;
}

cplx cross_ratio(double L, cplx z) {
    require_point(L, z);
    const double x1 = -0.5 * L, x2 = 0.5 * L;
    return (x1 - x2) * (z - std::conj(z)) / ((x1 - z) * (x2 - std::conj(z)));
}

CrossRatioGeometry CrossRatioGeometry::make(double L, cplx z) { return {L, z, cross_ratio(L, z)}; }

BubbleBranch resolve_bubble_branch(double kappa, Portion portion) {
    require_kappa(kappa);
    const auto lc = solutions::lower_constants(kappa);
    const double D = dim::d31(kappa);
    const bool lower = portion == Portion::lower;
    // the combination lives on the upper arc for the lower portion, on the lower arc otherwise
    const std::array<double, 7> phis = {-0.1, -0.25, -0.4, -0.55, -0.7, -0.85, -0.95};
    auto probe = [&](double phi) {
        const cplx p = arc_point(phi * pi);
        return lower ? p : std::conj(p);
    };
    BubbleBranch best;
    double best_score = std::numeric_limits<double>::infinity();
    for (int q = 0; q < 4; ++q) {
        for (int m = -1; m <= 1; ++m) {
            BubbleBranch b;
            b.kappa = kappa;
            b.portion = portion;
            b.quarter_turns = q;
            b.d31_turns = m;
            const cplx f = std::polar(1.0, 0.5 * pi * q + pi * D * m);
            b.c1 = lower ? f * lc[0] : std::conj(f * lc[0]);
            b.c2 = lower ? lc[1] : std::conj(lc[1]);
            const bool combo_inside = lower;
            const cplx ref = bubble_raw(b, probe(-0.5), combo_inside);
            if (!std::isfinite(std::abs(ref)) || std::abs(ref) == 0.0) continue;
            const cplx ph = ref / std::abs(ref);
            double res = 0.0;
            for (double phi : phis) {
                const cplx v = bubble_raw(b, probe(phi), combo_inside) / ph;
                res = std::max(res, std::abs(v.imag()) / std::abs(v));
            }
            // modulus continuity where the two regimes meet (xi = 2)
            const double a_in = std::abs(bubble_raw(b, 2.0, true));
            const double a_out = std::abs(bubble_raw(b, 2.0, false));
            const double cont = std::abs(a_in - a_out) / std::max(a_in, a_out);
            if (!std::isfinite(res) || !std::isfinite(cont)) continue;
            const double score = res + cont;
            if (score < best_score) {
                best_score = score;
                best = b;
                best.phase_residue = res;
                best.continuity_residue = cont;
            }
        }
    }
    if (!(best.phase_residue < 1e-6 && best.continuity_residue < 1e-6))
        fail(ErrorKind::reality, "no sheet choice makes the bubble combination real at kappa = " + std::to_string(kappa) +
                                     " (best residue " + std::to_string(best_score) + ")");
    const cplx rin = bubble_raw(best, lower ? arc_point(-0.5 * pi) : std::conj(arc_point(-0.5 * pi)), true);
    const cplx rout = bubble_raw(best, lower ? std::conj(arc_point(-0.5 * pi)) : arc_point(-0.5 * pi), false);
    best.inside_phase = rin / std::abs(rin);
    best.outside_phase = rout / std::abs(rout);
    try {
        best.normalization = solutions::C222(kappa);
        best.normalized = true;
    } catch (const Error&) {
        best.normalization = 1.0;
        best.normalized = false;
    }
    return best;
}

double bubble_density(const BubbleBranch& b, double L, cplx z) {
    const auto g = CrossRatioGeometry::make(L, z);
    const bool in = g.inside();
    const cplx raw = bubble_raw(b, g.xi, in) / (in ? b.inside_phase : b.outside_phase);
    const double mag = std::abs(raw);
    if (mag > 0.0 && std::abs(raw.imag()) > 1e-6 * mag)
        fail(ErrorKind::reality, "bubble density has an imaginary residue of " + std::to_string(raw.imag() / mag));
    const double k = b.kappa;
    return b.normalization * prefactor(L, z.imag(), dim::d31(k), dim::d10(k)) * mag;
}

double density(Kind kind, double L, cplx z, double kappa) {
    require_point(L, z);
    require_kappa(kappa);
    const double k = kappa;
    const double y = z.imag();
    switch (kind) {
    case Kind::rho110: {
        require_cluster_regime(k, "rho110");
        const auto g = CrossRatioGeometry::make(L, z);
        const cplx b = g.inside() ? solutions::spin_g1(g.xi, k) : solutions::spin_g2(g.xi, k);
        return prefactor(L, y, dim::d21(k), dim::sigma(k)) * std::abs(b);
    }
    case Kind::rho112: {
        const double C = solutions::C112(k);
        const cplx xi = cross_ratio(L, z);
        return C * prefactor(L, y, dim::d21(k), dim::d10(k)) * std::abs(solutions::chordal(xi, k));
    }
    case Kind::rho220: {
        require_cluster_regime(k, "rho220");
        const double C = solutions::C222(k);
        const cplx xi = cross_ratio(L, z);
        return C * prefactor(L, y, dim::d31(k), dim::sigma(k)) * std::abs(solutions::chordal(xi, k));
    }
    case Kind::rho222_lower: {
        // the branch search is the expensive part and depends on kappa only
        thread_local std::optional<BubbleBranch> cached;
        if (!cached || cached->kappa != k) cached = resolve_bubble_branch(k, Portion::lower);
        return bubble_density(*cached, L, z);
    }
    case Kind::rho224: {
        require_cluster_regime(k, "rho224");
        const double C = solutions::C224(k);
        const cplx xi = cross_ratio(L, z);
        return C * prefactor(L, y, dim::d31(k), dim::d20(k)) * std::abs(solutions::pivotal(xi, k));
    }
    }
    fail(ErrorKind::domain, "unknown density kind");
}

double left_passage(cplx z, double kappa) {
    if (!(z.imag() > 0.0)) fail(ErrorKind::domain, "z must lie in the open upper half-plane");
    if (!(kappa > 0.0)) fail(ErrorKind::domain, "kappa must be positive");
    // x1 = 0, x2 = infinity: xi = 2 i y / z and u = i (xi - 2) / xi = -x / y
    const cplx xi = 2.0 * cplx(0.0, z.imag()) / z;
    const double u = (cplx(0.0, 1.0) * (xi - 2.0) / xi).real();
    if (u == 0.0) return 0.5;
    const double K = std::tgamma(4.0 / kappa) / std::sqrt(pi) * specfun::recip_gamma(4.0 / kappa - 0.5);
    if (K == 0.0) return 0.5;
    const cplx F = specfun::hyp2f1({0.5, 4.0 / kappa, 1.5}, -u * u);
    return 0.5 - K * u * F.real();
}

double greens(cplx z, double kappa) {
    if (!(z.imag() > 0.0)) fail(ErrorKind::domain, "z must lie in the open upper half-plane");
    if (!(kappa > 0.0 && kappa < 8.0)) fail(ErrorKind::domain, "greens needs 0 < kappa < 8");
    return std::pow(z.imag(), (kappa - 8.0) * (kappa - 8.0) / (8.0 * kappa)) * std::pow(std::abs(z), 1.0 - 8.0 / kappa);
}

int worker_count(int requested) {
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SLE_DENSITIES_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) n = std::min(n, cap);
    }
    return std::max(1, n);
}

DensityGrid grid_eval(Kind kind, double kappa, double L, Region region, int nx, int ny, int threads) {
    if (nx < 1 || ny < 1) fail(ErrorKind::domain, "grid needs nx, ny >= 1");
    if (!(region.xmax > region.xmin) || !(region.ymax > region.ymin) || region.ymin < 0.0)
        fail(ErrorKind::domain, "grid region must be a non-empty box in the closed upper half-plane");
    require_kappa(kappa);
    DensityGrid g{kind, kappa, L, region, nx, ny, {}, {}, {}, 0, {}};
    for (int i = 0; i < nx; ++i) g.xs.push_back(region.xmin + (i + 0.5) * (region.xmax - region.xmin) / nx);
    for (int j = 0; j < ny; ++j) g.ys.push_back(region.ymin + (j + 0.5) * (region.ymax - region.ymin) / ny);
    g.values.assign(std::size_t(nx) * ny, std::numeric_limits<double>::quiet_NaN());

    std::optional<BubbleBranch> branch;
    if (kind == Kind::rho222_lower) {
        branch = resolve_bubble_branch(kappa, Portion::lower);
        g.normalization = branch->normalized ? "C_222" : "unnormalized (C_222 undefined at this kappa)";
    } else {
        g.normalization = kind == Kind::rho110 ? "C_110 = 1" : kind == Kind::rho112 ? "C_112"
                          : kind == Kind::rho220 ? "C_222" : "C_224";
    }
    // fail early on kappa-level errors (regime, structure constants) rather than per cell
    if (!branch) (void)density(kind, L, cplx(g.xs[0], g.ys[0]), kappa);

    const int workers = std::min(worker_count(threads), ny);
    std::vector<int> errors(ny, 0);
    auto rows = [&](int w) {
        for (int j = w; j < ny; j += workers) {
            for (int i = 0; i < nx; ++i) {
                const cplx z(g.xs[i], g.ys[j]);
                try {
                    g.values[std::size_t(j) * nx + i] =
                        branch ? bubble_density(*branch, L, z) : density(kind, L, z, kappa);
                } catch (const Error&) {
                    ++errors[j];
                }
            }
        }
    };
    if (workers == 1) {
        rows(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(rows, w);
        for (auto& t : pool) t.join();
    }
    for (int e : errors) g.error_count += e;
    return g;
}

}  // namespace sle::densities
