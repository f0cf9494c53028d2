#include "sle/bpz_ode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Core>
#include <unsupported/Eigen/Polynomials>
#include <boost/numeric/odeint.hpp>

#include "sle/error.hpp"
#include "sle/params.hpp"

namespace sle::bpz {

namespace {

Poly pmul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly padd(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

Poly pscale(Poly a, double s) {
    for (auto& x : a) x *= s;
    return a;
}

// Re-expand a polynomial in xi as a polynomial in t = xi - p.
Poly shift(const Poly& a, double p) {
    Poly r{0.0};
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = padd(pmul(r, {p, 1.0}), {*it});
    return r;
}

int valuation(const Poly& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i]) > 1e-300) return static_cast<int>(i);
    return 1 << 20;
}

double falling(double x, int j) {
    double r = 1.0;
    for (int i = 0; i < j; ++i) r *= x - i;
    return r;
}

struct LocalForm {
    std::vector<Poly> Q;  // coefficient polynomials in t
    int N = 0;
    int off = 0;  // t-valuation offset of the leading term
};

LocalForm local_form(const BpzSpec& spec, SingularPoint point) {
    LocalForm lf;
    lf.N = spec.n();
    const double p = point == SingularPoint::zero ? 0.0 : 1.0;
    for (int k = 0; k <= lf.N; ++k) lf.Q.push_back(shift(spec.poly(k), p));
    lf.off = valuation(lf.Q[lf.N]) - lf.N;
    return lf;
}

// sum_j Q_j[j + off + k] * (e)_j : coefficient of t^(e + off + k - ... ) in the recursion
double rec_coef(const LocalForm& lf, int k, double e) {
    double tot = 0.0;
    for (int j = 0; j <= lf.N; ++j) {
        const int m = j + lf.off + k;
        if (m >= 0 && m < static_cast<int>(lf.Q[j].size())) tot += lf.Q[j][m] * falling(e, j);
    }
    return tot;
}

double seg_distance(cplx p, cplx a, cplx b) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

}  // namespace

BpzSpec::BpzSpec(Order order, double delta_O, double kappa) : order_(order), delta_O_(delta_O), kappa_(kappa) {}

double BpzSpec::delta21() const { return dim::d21(kappa_); }
double BpzSpec::delta31() const { return dim::d31(kappa_); }

BpzSpec BpzSpec::build(Order order, double delta_O, double kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) fail(ErrorKind::domain, "kappa must be positive");
    BpzSpec s(order, delta_O, kappa);
    if (order == Order::second) {
        const double d21 = dim::d21(kappa);
        // 3 xi (1-xi)^2 G'' + (1-xi)(2 + 4 d21 (xi-2) - 4 xi) G' - (4 d21 + 2) dO xi G = 0
        s.polys_[2] = pmul({0.0, 3.0}, pmul({1.0, -1.0}, {1.0, -1.0}));
        s.polys_[1] = pmul({1.0, -1.0}, {2.0 - 8.0 * d21, 4.0 * d21 - 4.0});
        s.polys_[0] = {0.0, -(4.0 * d21 + 2.0) * delta_O};
        s.polys_[3] = {0.0};
    } else {
        const double D = dim::d31(kappa);
        const Poly xm1{-1.0, 1.0};
        // everything multiplied by (xi - 1) to clear the pole in delta
        s.polys_[3] = pmul(pmul({0.0, 0.0, 1.0}, pmul(xm1, xm1)), xm1);
        s.polys_[2] = pmul(pmul(pmul({0.0, 2.0}, xm1), {-1.0 + 2.0 * D, 2.0 - D}), xm1);
        s.polys_[1] = pmul({3.0 * D * (D - 1.0), -(3.0 * D - 1.0) * (D - 2.0),
                            (D - 1.0) * (D - 2.0) - 2.0 * delta_O * (D + 1.0)},
                           xm1);
        s.polys_[0] = pscale(pmul({0.0, 1.0}, {-2.0, 1.0}), 2.0 * delta_O * D * (D + 1.0));
    }
    return s;
}

std::vector<cplx> BpzSpec::coefficients(cplx xi) const {
    if (xi == 0.0 || xi == 1.0) fail(ErrorKind::singular_point, "BPZ coefficients are singular at xi = 0 and xi = 1");
    if (order_ == Order::second) {
        const double d21 = delta21();
        const cplx p = (2.0 + 4.0 * d21 * (xi - 2.0) - 4.0 * xi) / (3.0 * xi * (1.0 - xi));
        const cplx q = -(4.0 * d21 + 2.0) * delta_O_ / (3.0 * (1.0 - xi) * (1.0 - xi));
        return {1.0, p, q};
    }
    const double D = delta31();
    const cplx alpha = xi * xi * (xi - 1.0) * (xi - 1.0);
    const cplx beta = 2.0 * xi * (xi - 1.0) * (2.0 * xi - 1.0 - D * (xi - 2.0));
    const cplx gamma = 3.0 * D * (D - 1.0) - (3.0 * D - 1.0) * (D - 2.0) * xi +
                       ((D - 1.0) * (D - 2.0) - 2.0 * delta_O_ * (D + 1.0)) * xi * xi;
    const cplx delta = 2.0 * delta_O_ * D * (D + 1.0) * xi * (xi - 2.0) / (xi - 1.0);
    return {alpha, beta, gamma, delta};
}

cplx BpzSpec::apply(const std::array<cplx, 4>& d, cplx xi) const {
    const auto c = coefficients(xi);
    const int N = n();
    cplx r = 0.0;
    for (int k = 0; k <= N; ++k) r += c[N - k] * d[k];
    return r;
}

std::vector<double> indicial(const BpzSpec& spec, SingularPoint point) {
    const auto lf = local_form(spec, point);
    // indicial polynomial in s: sum_j Q_j[j + off] * s (s-1) ... (s-j+1)
    Poly ip{0.0};
    for (int j = 0; j <= lf.N; ++j) {
        const int m = j + lf.off;
        if (m < 0 || m >= static_cast<int>(lf.Q[j].size())) continue;
        Poly fj{1.0};
        for (int i = 0; i < j; ++i) fj = pmul(fj, {-double(i), 1.0});
        ip = padd(ip, pscale(fj, lf.Q[j][m]));
    }
    while (ip.size() > 1 && std::abs(ip.back()) < 1e-300) ip.pop_back();
    Eigen::VectorXd coeffs(ip.size());
    for (std::size_t i = 0; i < ip.size(); ++i) coeffs[i] = ip[i];
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
    solver.compute(coeffs);
    std::vector<double> roots;
    for (const auto& r : solver.roots()) {
        // polish with Newton steps on the real polynomial
        double x = r.real();
        for (int it = 0; it < 3; ++it) {
            double f = 0.0, df = 0.0;
            for (auto c = ip.rbegin(); c != ip.rend(); ++c) {
                df = df * x + f;
                f = f * x + *c;
            }
            if (df == 0.0) break;
            x -= f / df;
        }
        if (std::abs(r.imag()) > 1e-8 * (1.0 + std::abs(r.real())))
            fail(ErrorKind::domain, "indicial exponents are not real");
        roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

SeriesSolution frobenius(const BpzSpec& spec, SingularPoint point, double exponent, int n_terms) {
    if (n_terms < 1) fail(ErrorKind::domain, "frobenius needs at least one term");
    const auto roots = indicial(spec, point);
    bool found = false;
    for (double r : roots)
        if (std::abs(r - exponent) < 1e-9 * (1.0 + std::abs(r))) found = true;
    if (!found) fail(ErrorKind::domain, "requested exponent is not an indicial exponent at this point");
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            const double g = roots[j] - roots[i];
            if (std::abs(g - std::round(g)) < 1e-9)
                fail(ErrorKind::resonance, "indicial exponents differ by an integer (" + std::to_string(roots[i]) +
                                               ", " + std::to_string(roots[j]) + "); perturb kappa or use integrate");
        }
    const auto lf = local_form(spec, point);
    std::vector<double> c{1.0};
    for (int n = 1; n < n_terms; ++n) {
        double rhs = 0.0;
        for (int k = 1; k <= n; ++k) rhs += rec_coef(lf, k, exponent + n - k) * c[n - k];
        c.push_back(-rhs / rec_coef(lf, 0, exponent + n));
    }
    SeriesSolution sol;
    sol.point = point;
    sol.exponent = exponent;
    sol.coefficients.assign(c.begin(), c.end());
    double tail = 0.0;
    for (int n = std::max(0, n_terms - 5); n < n_terms; ++n)
        tail = std::max(tail, std::abs(c[n]) * std::pow(sol.radius, n));
    sol.tail_bound = 2.0 * tail;
    return sol;
}

std::array<cplx, 4> SeriesSolution::derivatives(cplx xi) const {
    const double p = point == SingularPoint::zero ? 0.0 : 1.0;
    const cplx t = xi - p;
    if (std::abs(t) > radius * (1.0 + 1e-12))
        fail(ErrorKind::domain, "series evaluated outside its guaranteed radius");
    // S, S', S'', S''' in t (Horner)
    std::array<cplx, 4> S{0.0, 0.0, 0.0, 0.0};
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        S[3] = S[3] * t + 3.0 * S[2];
        S[2] = S[2] * t + 2.0 * S[1];
        S[1] = S[1] * t + S[0];
        S[0] = S[0] * t + *it;
    }
    const double s = exponent;
    const cplx base = point == SingularPoint::zero ? t : -t;
    if (t == 0.0) {
        // only the leading behavior is meaningful at the expansion point itself
        const cplx v = s == 0.0 ? S[0] : (s > 0.0 ? cplx(0.0) : cplx(INFINITY));
        return {v, 0.0, 0.0, 0.0};
    }
    const cplx B = std::pow(base, s);
    const cplx u = s / t, u2 = s * (s - 1.0) / (t * t), u3 = s * (s - 1.0) * (s - 2.0) / (t * t * t);
    return {B * S[0], B * (u * S[0] + S[1]), B * (u2 * S[0] + 2.0 * u * S[1] + S[2]),
            B * (u3 * S[0] + 3.0 * u2 * S[1] + 3.0 * u * S[2] + S[3])};
}

namespace {

using State = std::array<double, 6>;

struct Segment {
    const BpzSpec* spec;
    cplx a, d;  // xi(t) = a + t d
    void operator()(const State& y, State& dy, double t) const {
        const cplx xi = a + t * d;
        const cplx f0(y[0], y[1]), f1(y[2], y[3]), f2(y[4], y[5]);
        const auto c = spec->coefficients(xi);
        cplx top;
        cplx d0 = f1 * d, d1, d2;
        if (spec->order() == Order::second) {
            top = -(c[1] * f1 + c[2] * f0);
            d1 = top * d;
            d2 = 0.0;
        } else {
            top = -(c[1] * f2 + c[2] * f1 + c[3] * f0) / c[0];
            d1 = f2 * d;
            d2 = top * d;
        }
        dy = {d0.real(), d0.imag(), d1.real(), d1.imag(), d2.real(), d2.imag()};
    }
};

std::vector<PathValue> transport_once(const BpzSpec& spec, std::span<const cplx> initial, std::span<const cplx> path,
                                      double tol) {
    namespace odeint = boost::numeric::odeint;
    State y{};
    for (std::size_t k = 0; k < initial.size(); ++k) {
        y[2 * k] = initial[k].real();
        y[2 * k + 1] = initial[k].imag();
    }
    std::vector<PathValue> out;
    auto snapshot = [&](cplx xi) {
        out.push_back({xi, {cplx(y[0], y[1]), cplx(y[2], y[3]), cplx(y[4], y[5])}});
    };
    snapshot(path[0]);
    for (std::size_t k = 1; k < path.size(); ++k) {
        Segment seg{&spec, path[k - 1], path[k] - path[k - 1]};
        auto stepper = odeint::make_controlled<odeint::runge_kutta_fehlberg78<State>>(tol * 1e-3, tol);
        try {
            odeint::integrate_adaptive(stepper, seg, y, 0.0, 1.0, 1e-2);
        } catch (const std::exception& e) {
            fail(ErrorKind::step_underflow, std::string("integration failed: ") + e.what());
        }
        snapshot(path[k]);
    }
    return out;
}

}  // namespace

Transport integrate(const BpzSpec& spec, std::span<const cplx> initial, std::span<const cplx> path) {
    if (static_cast<int>(initial.size()) != spec.n())
        fail(ErrorKind::domain, "initial data must hold f and its first order-1 derivatives");
    if (path.size() < 2) fail(ErrorKind::domain, "path needs at least two vertices");
    for (std::size_t k = 1; k < path.size(); ++k) {
        const cplx a = path[k - 1], b = path[k];
        if (seg_distance(0.0, a, b) < 1e-3 || seg_distance(1.0, a, b) < 1e-3)
            fail(ErrorKind::domain, "path passes within 1e-3 of a singular point");
        if ((a.imag() < 0.0 && b.imag() > 0.0) || (a.imag() > 0.0 && b.imag() < 0.0)) {
            const double t = a.imag() / (a.imag() - b.imag());
            const double x = a.real() + t * (b.real() - a.real());
            if (x < 0.0 || x > 1.0) fail(ErrorKind::cut, "path crosses the real axis outside (0, 1)");
        }
    }
    Transport tr;
    tr.vertices = transport_once(spec, initial, path, 1e-12);
    const auto coarse = transport_once(spec, initial, path, 1e-10);
    const auto& fine_end = tr.vertices.back().y;
    const auto& coarse_end = coarse.back().y;
    double num = 0.0, den = 0.0;
    for (int k = 0; k < spec.n(); ++k) {
        num = std::max(num, std::abs(fine_end[k] - coarse_end[k]));
        den = std::max(den, std::abs(fine_end[k]));
    }
    tr.error_estimate = den > 0.0 ? num / den : num;
    return tr;
}

std::array<cplx, 4> stencil_derivatives(const std::function<cplx(cplx)>& f, cplx xi, double radius, int points) {
    std::vector<cplx> v(points);
    for (int k = 0; k < points; ++k)
        v[k] = f(xi + radius * std::polar(1.0, 2.0 * std::numbers::pi * k / points));
    std::array<cplx, 4> d{};
    double fact = 1.0;
    for (int m = 0; m < 4; ++m) {
        cplx a = 0.0;
        for (int k = 0; k < points; ++k) a += v[k] * std::polar(1.0, -2.0 * std::numbers::pi * k * m / points);
        d[m] = a / double(points) / std::pow(radius, m) * fact;
        fact *= m + 1;
    }
    return d;
}

double residual(const BpzSpec& spec, const std::function<cplx(cplx)>& f, cplx xi, ResidualOptions opt) {
    const double dist = std::min(std::abs(xi), std::abs(1.0 - xi));
    if (dist < 1e-6) fail(ErrorKind::singular_point, "residual requested at a singular point");
    const double r = opt.radius > 0.0 ? opt.radius : std::min(1e-2, 0.05 * dist);
    const auto d = stencil_derivatives(f, xi, r, opt.points);
    const auto h = stencil_derivatives(f, xi, 0.5 * r, opt.points);
    const double mag = std::max({std::abs(d[0]) , std::abs(d[1]) * r, std::abs(d[2]) * r * r});
    for (int m = 0; m < 3; ++m) {
        if (std::abs(d[m] - h[m]) * std::pow(r, m) > 1e-5 * mag)
            fail(ErrorKind::cut, "residual stencil straddles a branch cut of the function");
    }
    const auto c = spec.coefficients(xi);
    const int N = spec.n();
    cplx sum = 0.0;
    double scale = 0.0;
    for (int k = 0; k <= N; ++k) {
        const cplx term = c[N - k] * d[k];
        sum += term;
        scale = std::max(scale, std::abs(term));
    }
    return scale > 0.0 ? std::abs(sum) / scale : 0.0;
}

}  // namespace sle::bpz
