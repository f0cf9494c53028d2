#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sle::densities {

using cplx = std::complex<double>;

enum class Kind { rho110, rho112, rho220, rho222_lower, rho224 };

const char* to_string(Kind kind);
std::optional<Kind> parse_kind(std::string_view name);

// Anchors at -L/2 and +L/2, bulk point z in the upper half-plane.
struct CrossRatioGeometry {
    double L;
    cplx z;
    cplx xi;

    static CrossRatioGeometry make(double L, cplx z);
    bool inside() const { return std::abs(z) < 0.5 * L; }
};

cplx cross_ratio(double L, cplx z);

enum class Portion { lower, upper };

// Outcome of the finite sheet search for the bubble-boundary combination.
// The factor multiplying c1 is i^quarter_turns * exp(i pi D31 d31_turns).
struct BubbleBranch {
    double kappa = 0.0;
    Portion portion = Portion::lower;
    cplx c1, c2;  // effective coefficients, sheet factor already applied to c1
    int quarter_turns = 0;
    int d31_turns = 0;
    double phase_residue = 0.0;      // max |Im| / |raw| over the probe arc
    double continuity_residue = 0.0; // relative modulus jump at xi = 2
    cplx inside_phase = 1.0;         // reference phases removed before taking the real part
    cplx outside_phase = 1.0;
    double normalization = 1.0;      // C_{2,2;2} where defined
    bool normalized = false;
};

BubbleBranch resolve_bubble_branch(double kappa, Portion portion = Portion::lower);

double density(Kind kind, double L, cplx z, double kappa);
double bubble_density(const BubbleBranch& branch, double L, cplx z);

// Chordal SLE from 0 to infinity.
double left_passage(cplx z, double kappa);
double greens(cplx z, double kappa);

struct Region {
    double xmin, xmax, ymin, ymax;
};

struct DensityGrid {
    Kind kind;
    double kappa;
    double L;
    Region region;
    int nx, ny;
    std::vector<double> xs, ys;  // cell-centred sample coordinates
    std::vector<double> values;  // row-major: values[j * nx + i] at (xs[i], ys[j])
    int error_count = 0;         // cells that raised an error, stored as NaN
    std::string normalization;
};

// threads = 0 uses the hardware concurrency capped by SLE_DENSITIES_THREADS.
DensityGrid grid_eval(Kind kind, double kappa, double L, Region region, int nx, int ny, int threads = 0);

int worker_count(int requested = 0);

}  // namespace sle::densities
