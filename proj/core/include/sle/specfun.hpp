#pragma once

#include <complex>

namespace sle::specfun {

using cplx = std::complex<double>;

// Principal value of log Gamma(z): exp(log_gamma(z)) == Gamma(z), imaginary part in (-pi, pi].
cplx log_gamma(cplx z);
cplx recip_gamma(cplx z);  // exactly zero at the poles of Gamma
double recip_gamma(double x);
double gamma(double x);  // throws a pole error at non-positive integers
cplx gamma(cplx z);
cplx digamma(cplx z);

struct HypParams {
    cplx a, b, c;
};

// Which side of the cut [1, inf) a real argument z > 1 is approached from.
enum class CutSide { none, above, below };

enum class Hyp2f1Route {
    maclaurin,
    polynomial,
    gauss_sum,
    pfaff,                // z -> z/(z-1)
    one_minus_z,          // z -> 1-z, including the logarithmic case
    inverse,              // z -> 1/z
    inverse_one_minus_z,  // z -> 1/(1-z)
    one_minus_inverse,    // z -> (z-1)/z
    recentred,            // Taylor stepping of the hypergeometric equation
};

const char* to_string(Hyp2f1Route route);

struct Hyp2f1Result {
    cplx value;
    Hyp2f1Route route;
};

cplx hyp2f1(const HypParams& p, cplx z, CutSide side = CutSide::none);
Hyp2f1Result hyp2f1_traced(const HypParams& p, cplx z, CutSide side = CutSide::none);
// Forces one evaluation route. Throws a degeneracy error if the route cannot
// handle the parameters; convergence is the caller's concern.
cplx hyp2f1_via(const HypParams& p, cplx z, Hyp2f1Route route);

}  // namespace sle::specfun
