#include "sle/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "sle/error.hpp"

namespace sle::specfun {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double int_tol = 1e-10;  // parameters this close to an integer are treated as exact
constexpr double series_tol = 1e-16;
constexpr int series_cap = 20000;
constexpr double safe_radius = 0.8;

bool is_nonpos_int(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// True when x is within int_tol of an integer; the integer goes to n.
bool near_int(cplx x, int& n) {
    if (std::abs(x.imag()) > int_tol) return false;
    const double r = std::round(x.real());
    if (std::abs(x.real() - r) > int_tol || std::abs(r) > 1e6) return false;
    n = static_cast<int>(r);
    return true;
}

bool near_nonpos_int(cplx x) {
    int n = 0;
    return near_int(x, n) && n <= 0;
}

cplx lg_stirling(cplx z) {
    // shift into the asymptotic region, then undo with the sum of logs
    cplx shift = 0.0;
    while (z.real() < 15.0) {
        shift += std::log(z);
        z += 1.0;
    }
    static constexpr std::array<double, 8> b2k = {1.0 / 6,   -1.0 / 30,    1.0 / 42, -1.0 / 30,
                                                  5.0 / 66,  -691.0 / 2730, 7.0 / 6, -3617.0 / 510};
    cplx sum = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * pi);
    const cplx zinv = 1.0 / z, z2 = zinv * zinv;
    cplx zp = zinv;
    for (std::size_t k = 1; k <= b2k.size(); ++k) {
        sum += b2k[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * zp;
        zp *= z2;
    }
    return sum - shift;
}

cplx reduce_imag(cplx v) {
    double im = std::remainder(v.imag(), 2.0 * pi);
    if (im <= -pi) im += 2.0 * pi;
    return {v.real(), im};
}

}  // namespace

cplx log_gamma(cplx z) {
    if (is_nonpos_int(z)) fail(ErrorKind::pole, "log_gamma: pole at non-positive integer");
    if (z.imag() == 0.0 && z.real() > 0.0) return std::lgamma(z.real());
    if (z.imag() == 0.0) {
        // negative non-integer real: real log|Gamma| plus the sign as a phase
        const double g = std::tgamma(z.real());
        return {std::lgamma(z.real()), g < 0.0 ? pi : 0.0};
    }
    cplx r;
    if (z.real() < 0.5)
        r = std::log(pi) - std::log(std::sin(pi * z)) - lg_stirling(1.0 - z);
    else
        r = lg_stirling(z);
    return reduce_imag(r);
}

cplx recip_gamma(cplx z) {
    if (is_nonpos_int(z)) return 0.0;
    if (z.imag() == 0.0) return recip_gamma(z.real());
    return std::exp(-log_gamma(z));
}

double recip_gamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) return 0.0;
    return 1.0 / std::tgamma(x);
}

double gamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) fail(ErrorKind::pole, "gamma: pole at non-positive integer");
    return std::tgamma(x);
}

cplx gamma(cplx z) {
    if (z.imag() == 0.0) return gamma(z.real());
    return std::exp(log_gamma(z));
}

cplx digamma(cplx z) {
    if (is_nonpos_int(z)) fail(ErrorKind::pole, "digamma: pole at non-positive integer");
    if (z.real() < 0.5) return digamma(1.0 - z) - pi / std::tan(pi * z);
    cplx shift = 0.0;
    while (std::abs(z) < 12.0) {
        shift += 1.0 / z;
        z += 1.0;
    }
    static constexpr std::array<double, 7> b2k = {1.0 / 6, -1.0 / 30,   1.0 / 42, -1.0 / 30,
                                                  5.0 / 66, -691.0 / 2730, 7.0 / 6};
    cplx sum = std::log(z) - 0.5 / z;
    const cplx z2 = 1.0 / (z * z);
    cplx zp = z2;
    for (std::size_t k = 1; k <= b2k.size(); ++k) {
        sum -= b2k[k - 1] / (2.0 * k) * zp;
        zp *= z2;
    }
    return sum - shift;
}

const char* to_string(Hyp2f1Route route) {
    switch (route) {
    case Hyp2f1Route::maclaurin: return "maclaurin";
    case Hyp2f1Route::polynomial: return "polynomial";
    case Hyp2f1Route::gauss_sum: return "gauss_sum";
    case Hyp2f1Route::pfaff: return "pfaff";
    case Hyp2f1Route::one_minus_z: return "one_minus_z";
    case Hyp2f1Route::inverse: return "inverse";
    case Hyp2f1Route::inverse_one_minus_z: return "inverse_one_minus_z";
    case Hyp2f1Route::one_minus_inverse: return "one_minus_inverse";
    case Hyp2f1Route::recentred: return "recentred";
    }
    return "unknown";
}

namespace {

// Plain Maclaurin sum; terminates exactly when a or b is a non-positive integer.
cplx series(cplx a, cplx b, cplx c, cplx z) {
    cplx sum = 1.0, term = 1.0;
    int quiet = 0;
    for (int n = 0; n < series_cap; ++n) {
        term *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1)) * z;
        sum += term;
        if (term == 0.0) return sum;
        if (std::abs(term) <= series_tol * std::abs(sum)) {
            if (++quiet == 3) return sum;
        } else {
            quiet = 0;
        }
    }
    fail(ErrorKind::accuracy, "hyp2f1: series did not converge within the term cap");
}

// Gamma(x) with complex support; pole error if x is at a pole.
cplx G(cplx x) { return gamma(x); }
cplx RG(cplx x) { return recip_gamma(x); }

// c - a - b is an integer m: limiting form of the 1-z connection.
cplx one_minus_z_log(cplx a, cplx b, cplx z, int m) {
    const cplx w = 1.0 - z;
    const cplx lw = std::log(w);
    if (m >= 0) {
        cplx finite = 0.0;
        if (m > 0) {
            cplx t = 1.0;
            for (int n = 0; n < m; ++n) {
                finite += t;
                t *= (a + double(n)) * (b + double(n)) / (double(n + 1) * (1.0 - double(m) + double(n))) * w;
            }
            finite *= std::tgamma(double(m)) * G(a + b + double(m)) * RG(a + double(m)) * RG(b + double(m));
        }
        // infinite part with the digamma bracket
        cplx psi1 = digamma(1.0), psim = digamma(double(m) + 1.0);
        cplx psia = digamma(a + double(m)), psib = digamma(b + double(m));
        cplx coef = 1.0 / std::tgamma(double(m) + 1.0);  // (a+m)_n (b+m)_n / (n! (n+m)!)
        cplx sum = 0.0;
        int quiet = 0;
        for (int n = 0; n < series_cap; ++n) {
            const cplx term = coef * (lw - psi1 - psim + psia + psib);
            sum += term;
            if (std::abs(term) <= series_tol * std::abs(sum) && n > 0) {
                if (++quiet == 3) break;
            } else {
                quiet = 0;
            }
            if (n == series_cap - 1) fail(ErrorKind::accuracy, "hyp2f1: logarithmic series did not converge");
            const double nn = n;
            coef *= (a + double(m) + nn) * (b + double(m) + nn) / ((nn + 1.0) * (nn + double(m) + 1.0)) * w;
            psi1 += 1.0 / (nn + 1.0);
            psim += 1.0 / (nn + double(m) + 1.0);
            psia += 1.0 / (a + double(m) + nn);
            psib += 1.0 / (b + double(m) + nn);
        }
        const cplx sign = (m % 2 == 0) ? 1.0 : -1.0;  // (z-1)^m = (-w)^m
        return finite - sign * std::pow(w, double(m)) * G(a + b + double(m)) * RG(a) * RG(b) * sum;
    }
    const int k = -m;
    cplx finite = 0.0;
    {
        cplx t = 1.0;
        for (int n = 0; n < k; ++n) {
            finite += t;
            t *= (a - double(k) + double(n)) * (b - double(k) + double(n)) /
                 (double(n + 1) * (1.0 - double(k) + double(n))) * w;
        }
        finite *= std::tgamma(double(k)) * G(a + b - double(k)) * RG(a) * RG(b) * std::pow(w, -double(k));
    }
    cplx psi1 = digamma(1.0), psik = digamma(double(k) + 1.0);
    cplx psia = digamma(a), psib = digamma(b);
    cplx coef = 1.0 / std::tgamma(double(k) + 1.0);
    cplx sum = 0.0;
    int quiet = 0;
    for (int n = 0; n < series_cap; ++n) {
        const cplx term = coef * (lw - psi1 - psik + psia + psib);
        sum += term;
        if (std::abs(term) <= series_tol * std::abs(sum) && n > 0) {
            if (++quiet == 3) break;
        } else {
            quiet = 0;
        }
        if (n == series_cap - 1) fail(ErrorKind::accuracy, "hyp2f1: logarithmic series did not converge");
        const double nn = n;
        coef *= (a + nn) * (b + nn) / ((nn + 1.0) * (nn + double(k) + 1.0)) * w;
        psi1 += 1.0 / (nn + 1.0);
        psik += 1.0 / (nn + double(k) + 1.0);
        psia += 1.0 / (a + nn);
        psib += 1.0 / (b + nn);
    }
    const cplx sign = (k % 2 == 0) ? 1.0 : -1.0;
    return finite - sign * G(a + b - double(k)) * RG(a - double(k)) * RG(b - double(k)) * sum;
}

cplx one_minus_z(cplx a, cplx b, cplx c, cplx z) {
    int m = 0;
    if (near_int(c - a - b, m)) return one_minus_z_log(a, b, z, m);
    const cplx w = 1.0 - z;
    const cplx t1 = G(c) * G(c - a - b) * RG(c - a) * RG(c - b);
    const cplx t2 = G(c) * G(a + b - c) * RG(a) * RG(b);
    cplx v = 0.0;
    if (t1 != 0.0) v += t1 * series(a, b, a + b - c + 1.0, w);
    if (t2 != 0.0) v += t2 * std::pow(w, c - a - b) * series(c - a, c - b, c - a - b + 1.0, w);
    return v;
}

cplx inverse(cplx a, cplx b, cplx c, cplx z) {
    int m = 0;
    if (near_int(a - b, m)) fail(ErrorKind::degeneracy, "hyp2f1: 1/z transform needs a-b non-integer");
    const cplx iz = 1.0 / z, mz = -z;
    const cplx t1 = G(c) * G(b - a) * RG(b) * RG(c - a);
    const cplx t2 = G(c) * G(a - b) * RG(a) * RG(c - b);
    cplx v = 0.0;
    if (t1 != 0.0) v += t1 * std::pow(mz, -a) * series(a, a - c + 1.0, a - b + 1.0, iz);
    if (t2 != 0.0) v += t2 * std::pow(mz, -b) * series(b, b - c + 1.0, b - a + 1.0, iz);
    return v;
}

cplx one_minus_inverse(cplx a, cplx b, cplx c, cplx z) {
    int m = 0;
    if (near_int(c - a - b, m)) fail(ErrorKind::degeneracy, "hyp2f1: (z-1)/z transform needs c-a-b non-integer");
    const cplx w = 1.0 - 1.0 / z;
    const cplx t1 = G(c) * G(c - a - b) * RG(c - a) * RG(c - b);
    const cplx t2 = G(c) * G(a + b - c) * RG(a) * RG(b);
    cplx v = 0.0;
    if (t1 != 0.0) v += t1 * std::pow(z, -a) * series(a, a - c + 1.0, a + b - c + 1.0, w);
    if (t2 != 0.0)
        v += t2 * std::pow(1.0 - z, c - a - b) * std::pow(z, a - c) * series(c - a, 1.0 - a, c - a - b + 1.0, w);
    return v;
}

cplx pfaff(cplx a, cplx b, cplx c, cplx z) {
    return std::pow(1.0 - z, -a) * series(a, c - b, c, z / (z - 1.0));
}

cplx inverse_one_minus_z(cplx a, cplx b, cplx c, cplx z) {
    // Pfaff to zeta = z/(z-1), then expand about zeta = 1, i.e. in powers of 1/(1-z)
    const cplx zeta = z / (z - 1.0);
    const cplx bb = c - b;
    const cplx inner = near_nonpos_int(bb) ? series(a, bb, c, zeta) : one_minus_z(a, bb, c, zeta);
    return std::pow(1.0 - z, -a) * inner;
}

// Taylor coefficients of the hypergeometric equation about z0, summed at z0 + h.
void taylor_step(cplx a, cplx b, cplx c, cplx z0, cplx h, cplx& w, cplx& dw) {
    const cplx P0 = z0 * (1.0 - z0), P1 = 1.0 - 2.0 * z0;
    const cplx Q0 = c - (a + b + 1.0) * z0, Q1 = -(a + b + 1.0), R = -a * b;
    cplx wn = w, wn1 = dw;  // w_n and w_{n+1}
    cplx val = wn + wn1 * h, der = wn1;
    cplx hp = h;  // h^(n+1)
    int quiet = 0;
    for (int n = 0; n < 2000; ++n) {
        const double nn = n;
        const cplx wn2 = -((P1 * nn + Q0) * (nn + 1.0) * wn1 + (-nn * (nn - 1.0) + Q1 * nn + R) * wn) /
                         (P0 * (nn + 2.0) * (nn + 1.0));
        const cplx tv = wn2 * hp * h;
        const cplx td = (nn + 2.0) * wn2 * hp;
        val += tv;
        der += td;
        if (std::abs(tv) <= 1e-17 * std::abs(val) && std::abs(td) <= 1e-17 * std::abs(der)) {
            if (++quiet == 3) {
                w = val;
                dw = der;
                return;
            }
        } else {
            quiet = 0;
        }
        hp *= h;
        wn = wn1;
        wn1 = wn2;
    }
    fail(ErrorKind::accuracy, "hyp2f1: recentred Taylor step did not converge");
}

cplx recentred(cplx a, cplx b, cplx c, cplx z) {
    const double s = z.imag() >= 0.0 ? 1.0 : -1.0;
    std::vector<cplx> path;
    // distance from 1 to the segment [0, z]
    const double t = std::clamp(z.real() / std::norm(z), 0.0, 1.0);
    const double d1 = std::abs(t * z - 1.0);
    if (d1 >= 0.3) {
        path = {0.5 * z / std::abs(z), z};
    } else {
        path = {cplx(0.0, 0.5 * s), cplx(1.0, 0.6 * s), z};
    }
    cplx w = series(a, b, c, path[0]);
    cplx dw = a * b / c * series(a + 1.0, b + 1.0, c + 1.0, path[0]);
    cplx pos = path[0];
    for (std::size_t k = 1; k < path.size(); ++k) {
        const cplx target = path[k];
        for (int guard = 0; std::abs(target - pos) > 0.0; ++guard) {
            if (guard > 10000) fail(ErrorKind::accuracy, "hyp2f1: recentring path stalled");
            const double R = std::min(std::abs(pos), std::abs(1.0 - pos));
            const double rem = std::abs(target - pos);
            const double step = std::min(rem, 0.5 * R);
            const cplx h = step == rem ? target - pos : (target - pos) / rem * step;
            taylor_step(a, b, c, pos, h, w, dw);
            pos = step == rem ? target : pos + h;
        }
    }
    return w;
}

cplx dispatch(cplx a, cplx b, cplx c, cplx z, Hyp2f1Route route) {
    switch (route) {
    case Hyp2f1Route::maclaurin:
    case Hyp2f1Route::polynomial: return series(a, b, c, z);
    case Hyp2f1Route::gauss_sum: return G(c) * G(c - a - b) * RG(c - a) * RG(c - b);
    case Hyp2f1Route::pfaff: return pfaff(a, b, c, z);
    case Hyp2f1Route::one_minus_z: return one_minus_z(a, b, c, z);
    case Hyp2f1Route::inverse: return inverse(a, b, c, z);
    case Hyp2f1Route::inverse_one_minus_z: return inverse_one_minus_z(a, b, c, z);
    case Hyp2f1Route::one_minus_inverse: return one_minus_inverse(a, b, c, z);
    case Hyp2f1Route::recentred: return recentred(a, b, c, z);
    }
    fail(ErrorKind::domain, "hyp2f1: unknown route");
}

cplx snap(cplx x) {
    int n = 0;
    return near_int(x, n) ? cplx(double(n), 0.0) : x;
}

void check_c(const HypParams& p) {
    if (near_nonpos_int(p.c)) {
        // allowed only when the series terminates before reaching the zero denominator
        int nc = 0, na = 1, nb = 1;
        near_int(p.c, nc);
        const bool ta = near_int(p.a, na) && na <= 0 && na > nc;
        const bool tb = near_int(p.b, nb) && nb <= 0 && nb > nc;
        if (!ta && !tb) fail(ErrorKind::degeneracy, "hyp2f1: c is a non-positive integer");
    }
}

}  // namespace

cplx hyp2f1_via(const HypParams& p, cplx z, Hyp2f1Route route) {
    check_c(p);
    return dispatch(snap(p.a), snap(p.b), snap(p.c), z, route);
}

Hyp2f1Result hyp2f1_traced(const HypParams& p, cplx z, CutSide side) {
    check_c(p);
    const cplx a = snap(p.a), b = snap(p.b), c = snap(p.c);
    if (z == 0.0) return {1.0, Hyp2f1Route::maclaurin};
    if (near_nonpos_int(a) || near_nonpos_int(b)) return {series(a, b, c, z), Hyp2f1Route::polynomial};
    if (z.imag() == 0.0 && z.real() >= 1.0) {
        if (z.real() == 1.0) {
            if ((c - a - b).real() <= 0.0) fail(ErrorKind::domain, "hyp2f1: divergent at z = 1");
            return {dispatch(a, b, c, z, Hyp2f1Route::gauss_sum), Hyp2f1Route::gauss_sum};
        }
        if (side == CutSide::none) fail(ErrorKind::cut, "hyp2f1: argument on the branch cut [1, inf)");
        z = cplx(z.real(), side == CutSide::above ? 1e-300 : -1e-300);
    }
    int m = 0;
    const bool ab_int = near_int(a - b, m);
    const bool cab_int = near_int(c - a - b, m);
    struct Cand {
        Hyp2f1Route route;
        double rho;
    };
    const std::array<Cand, 6> cands = {{
        {Hyp2f1Route::maclaurin, std::abs(z)},
        {Hyp2f1Route::pfaff, std::abs(z / (z - 1.0))},
        {Hyp2f1Route::one_minus_z, std::abs(1.0 - z)},
        {Hyp2f1Route::inverse, ab_int ? INFINITY : 1.0 / std::abs(z)},
        {Hyp2f1Route::inverse_one_minus_z, 1.0 / std::abs(1.0 - z)},
        {Hyp2f1Route::one_minus_inverse, cab_int ? INFINITY : std::abs(1.0 - 1.0 / z)},
    }};
    Cand best = cands[0];
    for (const auto& cd : cands)
        if (cd.rho < best.rho) best = cd;
    if (best.rho > safe_radius) best.route = Hyp2f1Route::recentred;
    return {dispatch(a, b, c, z, best.route), best.route};
}

cplx hyp2f1(const HypParams& p, cplx z, CutSide side) { return hyp2f1_traced(p, z, side).value; }

}  // namespace sle::specfun
