#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace sle::bpz {

using cplx = std::complex<double>;
using Poly = std::vector<double>;  // ascending coefficients

enum class Order { second = 2, third = 3 };
enum class SingularPoint { zero, one };

// One instance of the second- or third-order BPZ equation in the cross-ratio.
class BpzSpec {
public:
    static BpzSpec build(Order order, double delta_O, double kappa);

    Order order() const { return order_; }
    int n() const { return static_cast<int>(order_); }
    double delta_O() const { return delta_O_; }
    double kappa() const { return kappa_; }
    double beta_sq() const { return 4.0 / kappa_; }
    double delta21() const;
    double delta31() const;

    // Coefficients as printed, highest derivative first:
    // second order {1, p, q}; third order {alpha, beta, gamma, delta}.
    std::vector<cplx> coefficients(cplx xi) const;

    // Denominator-free form: sum_k poly(k)(xi) f^(k)(xi) = 0.
    const Poly& poly(int k) const { return polys_[k]; }

    // L[f] from derivatives {f, f', f'', f'''} in the printed normalization.
    cplx apply(const std::array<cplx, 4>& d, cplx xi) const;

private:
    BpzSpec(Order order, double delta_O, double kappa);
    Order order_;
    double delta_O_;
    double kappa_;
    std::array<Poly, 4> polys_;
};

std::vector<double> indicial(const BpzSpec& spec, SingularPoint point);

// f(xi) = (sigma t)^s sum_n c_n t^n, t = xi - point, sigma = +1 at 0 and -1 at 1,
// i.e. the prefactor is xi^s at 0 and (1-xi)^s at 1.
struct SeriesSolution {
    SingularPoint point;
    double exponent;
    std::vector<cplx> coefficients;
    double radius = 0.5;
    double tail_bound = 0.0;

    cplx operator()(cplx xi) const { return derivatives(xi)[0]; }
    std::array<cplx, 4> derivatives(cplx xi) const;  // f, f', f'', f'''
};

SeriesSolution frobenius(const BpzSpec& spec, SingularPoint point, double exponent, int n_terms = 80);

struct PathValue {
    cplx xi;
    std::array<cplx, 3> y;  // f, f', f'' (unused entries zero for second order)
};

struct Transport {
    std::vector<PathValue> vertices;  // one entry per path vertex, starting with the initial data
    double error_estimate = 0.0;      // relative difference between two tolerances
};

// Transports initial data {f, f', (f'')} at path[0] along the polyline.
Transport integrate(const BpzSpec& spec, std::span<const cplx> initial, std::span<const cplx> path);

struct ResidualOptions {
    double radius = 0.0;  // 0 picks min(1e-2, 0.05 * distance to the nearest singular point)
    int points = 16;
};

double residual(const BpzSpec& spec, const std::function<cplx(cplx)>& f, cplx xi, ResidualOptions opt = {});

// Derivatives f..f''' from a circular stencil; exposed for reuse by other checks.
std::array<cplx, 4> stencil_derivatives(const std::function<cplx(cplx)>& f, cplx xi, double radius, int points);

}  // namespace sle::bpz
