#include "sle/solutions.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "sle/bpz_ode.hpp"
#include "sle/error.hpp"
#include "sle/params.hpp"

namespace sle::solutions {

namespace {

constexpr double pi = std::numbers::pi;

// Thrown internally when a single factor sits on a pole; the caller decides
// whether the pole cancels (epsilon limit) or is real.
struct FactorPole {};

double sgamma(double x) {
    if (x <= 0.0 && std::abs(x - std::round(x)) < 1e-12) throw FactorPole{};
    return std::tgamma(x);
}

double srgamma(double x) {
    if (x <= 0.0 && std::abs(x - std::round(x)) < 1e-12) return 0.0;
    return 1.0 / std::tgamma(x);
}

double scsc(double x) {
    const double s = std::sin(x);
    if (std::abs(s) < 1e-13) throw FactorPole{};
    return 1.0 / s;
}

double ssec(double x) {
    const double c = std::cos(x);
    if (std::abs(c) < 1e-13) throw FactorPole{};
    return 1.0 / c;
}

double cst1_raw(double k) {
    return pi * (scsc(4 * pi / k) + scsc(12 * pi / k)) * sgamma(1 - 8 / k) * sgamma(2 - 8 / k) *
           srgamma(2 - 12 / k) * srgamma(1 - 4 / k) * srgamma(1 - 4 / k) * srgamma(4 / k);
}

// -c2, i.e. the square of C_{2,2;2}
double c222_raw(double k) {
    const double g1 = srgamma(8 / k), g2 = srgamma(2 * (k - 8) / k), g3 = srgamma((k - 4) / k);
    return -pi * (scsc(8 * pi / k) + scsc(16 * pi / k)) * ssec(8 * pi / k) * sgamma(2 - 8 / k) * sgamma(4 / k) *
           sgamma((k - 8) / k) * sgamma(2 * (k - 6) / k) * 0.5 * g1 * g1 * g2 * g2 * g3 * g3;
}

double c3_raw(double k) {
    return -(k - 8) * ssec(8 * pi / k) * sgamma(20 / k - 1) * sgamma(2 * (k - 6) / k) * srgamma(12 / k) *
           srgamma((k - 4) / k) / (2 * (k - 16));
}

double d1_raw(double k) {
    const double c8 = std::cos(8 * pi / k), c16 = std::cos(16 * pi / k);
    const double den = 2 * c8 + 2 * c16 + 1;
    if (std::abs(den) < 1e-13) throw FactorPole{};
    return (k - 8) * (2 * c8 + 1) * (2 * c8 + 1) * sgamma((k - 12) / k) * sgamma(2 * (k - 6) / k) *
           srgamma(2 - 20 / k) * srgamma((k - 4) / k) / ((k - 16) * den);
}

// Evaluates f(kappa); if a single factor hits a pole, takes the two-sided
// epsilon limit with one Richardson step and checks that the pole cancels.
double limit_eval(const std::function<double(double)>& f, double k, const char* what) {
    try {
        const double v = f(k);
        if (std::isfinite(v)) return v;
    } catch (const FactorPole&) {
    }
    constexpr double eps = 1e-6;
    try {
        const double p1 = f(k * (1 + eps)), m1 = f(k * (1 - eps));
        const double p2 = f(k * (1 + 2 * eps)), m2 = f(k * (1 - 2 * eps));
        const double a1 = 0.5 * (p1 + m1), a2 = 0.5 * (p2 + m2);
        if (!std::isfinite(a1) || std::abs(p1 - m1) > 1e-3 * (1.0 + std::abs(a1)))
            fail(ErrorKind::pole, std::string(what) + ": non-cancelling pole at kappa = " + std::to_string(k));
        return (4.0 * a1 - a2) / 3.0;
    } catch (const FactorPole&) {
        fail(ErrorKind::pole, std::string(what) + ": pole persists near kappa = " + std::to_string(k));
    }
}

double checked_sqrt(double v, const char* what, double k) {
    if (!(v >= 0.0))
        fail(ErrorKind::domain, std::string(what) + ": negative radicand at kappa = " + std::to_string(k));
    return std::sqrt(v);
}

void require_kappa(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) fail(ErrorKind::domain, "kappa must be positive");
}

cplx cpow(cplx base, double e) { return e == 0.0 ? cplx(1.0) : std::pow(base, e); }

}  // namespace

const char* to_string(Family f) {
    switch (f) {
    case Family::spin2nd: return "spin2nd";
    case Family::chordal2nd: return "chordal2nd";
    case Family::lpp2nd: return "lpp2nd";
    case Family::pair3rd: return "pair3rd";
    case Family::pivotal3rd: return "pivotal3rd";
    }
    return "unknown";
}

// With s = sqrt(1-xi), 1 +- (2-xi)/(2s) = (1 +- s)^2 / (2s); the second form is
// rewritten as -xi^2 / (2 s (1+s)^2) to avoid cancellation near xi = 0.
cplx spin_g1(cplx xi, double kappa) {
    const cplx s = std::sqrt(1.0 - xi);
    return cpow((1.0 + s) * (1.0 + s) / (2.0 * s), 0.5 * dim::d31(kappa));
}

cplx spin_g2(cplx xi, double kappa) {
    const cplx s = std::sqrt(1.0 - xi);
    return cpow(-xi * xi / (2.0 * s * (1.0 + s) * (1.0 + s)), 0.5 * dim::d31(kappa));
}

cplx chordal(cplx xi, double kappa) { return cpow(xi * xi / (1.0 - xi), 0.5 * dim::d31(kappa)); }

cplx pivotal(cplx xi, double kappa) { return cpow(xi * xi / (1.0 - xi), 0.5 * dim::d51(kappa)); }

cplx lpp_g2(cplx xi, double kappa, CutSide side) {
    const cplx u = cplx(0.0, 1.0) * (xi - 2.0) / xi;
    return u * specfun::hyp2f1({0.5, 4.0 / kappa, 1.5}, -u * u, side);
}

cplx pair_h1(cplx xi, double kappa, CutSide side) {
    const double a = 8.0 / kappa;
    return cpow(xi / (xi - 1.0), a - 1.0) * specfun::hyp2f1({1.0 - a, 1.0 - a, 2.0 - 2.0 * a}, xi, side);
}

cplx pair_h2(cplx xi, double kappa, CutSide side) {
    const double a = 8.0 / kappa;
    return cpow(xi, 3.0 * a - 2.0) * cpow(xi - 1.0, 1.0 - a) * specfun::hyp2f1({a, a, 2.0 * a}, xi, side);
}

std::vector<cplx> block(Family family, cplx xi, double kappa, CutSide side) {
    require_kappa(kappa);
    if (xi == 0.0 || xi == 1.0) fail(ErrorKind::singular_point, "blocks are singular at xi = 0 and xi = 1");
    switch (family) {
    case Family::spin2nd: return {spin_g1(xi, kappa), spin_g2(xi, kappa)};
    case Family::chordal2nd: return {chordal(xi, kappa)};
    case Family::lpp2nd: return {1.0, lpp_g2(xi, kappa, side)};
    case Family::pair3rd: return {pair_h1(xi, kappa, side), pair_h2(xi, kappa, side)};
    case Family::pivotal3rd: return {pivotal(xi, kappa)};
    }
    fail(ErrorKind::domain, "unknown block family");
}

Matrix2 crossing_F(double kappa) {
    require_kappa(kappa);
    const double b2 = 4.0 / kappa;
    const double c = std::cos(pi * b2);
    if (std::abs(c) < 1e-13) fail(ErrorKind::pole, "crossing_F: sec(pi beta^2) diverges");
    try {
        const double F12 = sgamma(1 - 2 * b2) * sgamma(2 - 2 * b2) * srgamma(2 - 3 * b2) * srgamma(1 - b2);
        const double F21 = sgamma(2 * b2) * sgamma(2 * b2 - 1) * srgamma(b2) * srgamma(3 * b2 - 1);
        return {{{-0.5 / c, F12}, {F21, 0.5 / c}}};
    } catch (const FactorPole&) {
        fail(ErrorKind::pole, "crossing_F: Gamma pole in a numerator at kappa = " + std::to_string(kappa));
    }
}

double cst1(double kappa) {
    require_kappa(kappa);
    return limit_eval(cst1_raw, kappa, "cst1");
}

double C112(double kappa) {
    require_kappa(kappa);
    return checked_sqrt(limit_eval(cst1_raw, kappa, "C_112"), "C_112", kappa);
}

double C222(double kappa) {
    require_kappa(kappa);
    return checked_sqrt(limit_eval(c222_raw, kappa, "C_222"), "C_222", kappa);
}

double C224(double kappa) {
    require_kappa(kappa);
    return checked_sqrt(limit_eval(d1_raw, kappa, "C_224"), "C_224", kappa);
}

StructureConstants structure_constants(double kappa) {
    StructureConstants s;
    s.C_112 = C112(kappa);
    s.C_222 = C222(kappa);
    s.C_224 = C224(kappa);
    return s;
}

StructureConstants structure_constants_kappa6() {
    StructureConstants s;
    s.C_112 = std::sqrt(-std::tgamma(-1.0 / 3)) / std::tgamma(1.0 / 3);
    s.C_222 = std::sqrt(-96.0 * std::pow(pi, 3.5) /
                        (std::tgamma(-2.0 / 3) * std::pow(std::tgamma(1.0 / 6), 3) * std::pow(std::tgamma(1.0 / 3), 2)));
    // square of 2^(3/4) 3^(-5/8) (pi/5)^(1/4); the unsquared expression is 0.7536, not 0.56785
    s.C_224 = std::pow(2.0, 1.5) * std::pow(3.0, -1.25) * std::sqrt(pi / 5.0);
    return s;
}

CrossingData third_order_crossing(double kappa) {
    require_kappa(kappa);
    const double k = kappa;
    if (std::abs(std::cos(8 * pi / k)) < 1e-8) fail(ErrorKind::pole, "third_order_crossing: cos(8 pi / kappa) = 0");
    CrossingData d;
    d.F = crossing_F(kappa);
    d.c2 = -limit_eval(c222_raw, k, "c2");
    d.c3 = limit_eval(c3_raw, k, "c3");
    d.d1 = limit_eval(d1_raw, k, "d1");
    const auto lc = lower_constants(kappa);
    d.lower_c1 = lc[0];
    d.lower_c2 = lc[1];
    return d;
}

std::array<cplx, 2> lower_constants(double kappa) {
    require_kappa(kappa);
    const double k = kappa, a = 8.0 / k;
    if (std::abs(std::cos(8 * pi / k)) < 1e-8) fail(ErrorKind::pole, "lower_constants: cos(8 pi / kappa) = 0");
    const double g16 = std::tgamma(2 * a), g8 = std::tgamma(a);
    return {std::polar(1.0, -16 * pi / k) * (2 * pi * k / (k - 16)) * g16 * g16 / (g8 * g8 * g8 * g8),
            std::polar(1.0, -24 * pi / k) / std::cos(8 * pi / k)};
}

SecondOrderCheck second_order_crossing_check(double kappa, int n_points) {
    using namespace bpz;
    if (n_points < 2) fail(ErrorKind::domain, "second_order_crossing_check needs at least two points");
    const auto spec = BpzSpec::build(Order::second, dim::d21(kappa), kappa);
    const double D = dim::d31(kappa);
    const auto g1 = frobenius(spec, SingularPoint::zero, 0.0);
    const auto g2 = frobenius(spec, SingularPoint::zero, D);
    const auto F = crossing_F(kappa);
    const double w = F[0][0] / F[1][0];
    const cplx x0 = 0.3;
    const auto a = g1.derivatives(x0), b = g2.derivatives(x0);
    const std::array<cplx, 2> init{a[0] - w * b[0], a[1] - w * b[1]};
    // target at 1: the solution with exponent D - 2 D21 = 2/kappa
    const auto target = frobenius(spec, SingularPoint::one, D - 2.0 * dim::d21(kappa));
    std::vector<cplx> path{x0};
    for (int k = 0; k < n_points; ++k) path.push_back(0.55 + 0.4 * k / (n_points - 1));
    const auto tr = integrate(spec, init, path);
    std::vector<double> ratios;
    for (std::size_t k = 1; k < tr.vertices.size(); ++k)
        ratios.push_back((tr.vertices[k].y[0] / target(tr.vertices[k].xi)).real());
    double mean = 0.0;
    for (double r : ratios) mean += r;
    mean /= ratios.size();
    double dev = 0.0;
    for (double r : ratios) dev = std::max(dev, std::abs(r - mean) / std::abs(mean));
    return {mean, dev};
}

ThirdOrderCheck verify_third_order_crossing(double kappa) {
    using namespace bpz;
    const double D = dim::d31(kappa);
    const auto spec = BpzSpec::build(Order::third, D, kappa);
    const auto cd = third_order_crossing(kappa);
    const auto h1 = frobenius(spec, SingularPoint::zero, 0.0);
    const auto h2 = frobenius(spec, SingularPoint::zero, D);
    const auto h3 = frobenius(spec, SingularPoint::zero, 3.0 * D + 1.0);
    const cplx x0 = 0.3;
    const auto a = h1.derivatives(x0), b = h2.derivatives(x0), c = h3.derivatives(x0);
    std::array<cplx, 3> init;
    for (int i = 0; i < 3; ++i) init[i] = a[i] + cd.c2 * b[i] + cd.c3 * c[i];

    // d1 against the unit-normalized top solution at 1 (exponent D + 1)
    const auto top = frobenius(spec, SingularPoint::one, D + 1.0);
    std::vector<cplx> path{x0, 0.6, 0.7, 0.8, 0.9};
    const int n_fit = 12;
    for (int k = 0; k < n_fit; ++k) path.push_back(1.0 - std::pow(10.0, -2.0 - double(k) / (n_fit - 1)));
    const auto tr = integrate(spec, init, path);
    double d1 = 0.0;
    for (int k = 1; k <= 4; ++k) d1 += (tr.vertices[k].y[0] / top(tr.vertices[k].xi)).real() / 4.0;

    // least squares for log y = a + s log t + b t with y = (1-xi)^(2D) H
    double M[3][3] = {}, r[3] = {};
    for (std::size_t k = 5; k < tr.vertices.size(); ++k) {
        const double t = 1.0 - tr.vertices[k].xi.real();
        const double y = std::log(std::abs(std::pow(t, 2.0 * D) * tr.vertices[k].y[0]));
        const double row[3] = {1.0, std::log(t), t};
        for (int i = 0; i < 3; ++i) {
            r[i] += row[i] * y;
            for (int j = 0; j < 3; ++j) M[i][j] += row[i] * row[j];
        }
    }
    // 3x3 solve by Cramer's rule
    auto det3 = [](double m[3][3]) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    double Ms[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) Ms[i][j] = (j == 1) ? r[i] : M[i][j];
    const double slope = det3(Ms) / det3(M);
    return {slope, dim::d51(kappa), d1, cd.d1};
}

}  // namespace sle::solutions
