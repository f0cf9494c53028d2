#pragma once

#include <array>
#include <complex>
#include <vector>

#include "sle/specfun.hpp"

namespace sle::solutions {

using cplx = std::complex<double>;
using specfun::CutSide;

enum class Family { spin2nd, chordal2nd, lpp2nd, pair3rd, pivotal3rd };

const char* to_string(Family f);

// Closed-form solution blocks. `side` only matters for real xi > 1, where the
// hypergeometric families need to know which side of the cut is meant.
std::vector<cplx> block(Family family, cplx xi, double kappa, CutSide side = CutSide::none);

cplx spin_g1(cplx xi, double kappa);
cplx spin_g2(cplx xi, double kappa);
cplx chordal(cplx xi, double kappa);                 // (xi^2/(1-xi))^(D31/2)
cplx lpp_g2(cplx xi, double kappa, CutSide side = CutSide::none);
cplx pair_h1(cplx xi, double kappa, CutSide side = CutSide::none);
cplx pair_h2(cplx xi, double kappa, CutSide side = CutSide::none);
cplx pivotal(cplx xi, double kappa);                 // (xi^2/(1-xi))^(D51/2)

using Matrix2 = std::array<std::array<double, 2>, 2>;

Matrix2 crossing_F(double kappa);

// F12 - F11 F22 / F21: the square of C_{1,1;2}.
double cst1(double kappa);

struct StructureConstants {
    double C_110 = 1.0;
    double C_112 = 0.0;
    double C_222 = 0.0;
    double C_224 = 0.0;
};

StructureConstants structure_constants(double kappa);
double C112(double kappa);
double C222(double kappa);
double C224(double kappa);
// Closed forms special to kappa = 6.
StructureConstants structure_constants_kappa6();

struct CrossingData {
    Matrix2 F{};
    double c2 = 0.0, c3 = 0.0, d1 = 0.0;
    cplx lower_c1, lower_c2;
};

CrossingData third_order_crossing(double kappa);
// c1, c2 of the lower-portion combination (independent of c3, so finite at kappa = 6)
std::array<cplx, 2> lower_constants(double kappa);

struct SecondOrderCheck {
    double ratio;          // fitted proportionality constant
    double max_deviation;  // max relative spread of the ratio over the sample points
};

SecondOrderCheck second_order_crossing_check(double kappa, int n_points = 10);

struct ThirdOrderCheck {
    double exponent;       // fitted exponent of (1-xi)^(2 D31) H near xi = 1
    double expected;       // D51
    double d1;             // fitted leading coefficient of H against the top solution at 1
    double d1_expected;
};

ThirdOrderCheck verify_third_order_crossing(double kappa);

}  // namespace sle::solutions
