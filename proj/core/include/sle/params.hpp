#pragma once

#include <optional>
#include <vector>

namespace sle {

enum class Phase { dilute, dense, boundary };

const char* to_string(Phase phase);

// Kac indices; fractional values are allowed.
struct KacLabel {
    double r;
    double s;
};

// kappa is the only stored quantity; everything else is derived on demand.
class ModelParams {
public:
    explicit ModelParams(double kappa);

    double kappa() const { return kappa_; }
    double beta_sq() const { return 4.0 / kappa_; }
    // loop fugacity n = -2 cos(4 pi / kappa); only meaningful for 2 <= kappa <= 8
    std::optional<double> n() const;
    std::optional<double> Q() const;
    double central_charge() const;
    Phase phase() const;

private:
    double kappa_;
};

ModelParams model_from_kappa(double kappa);

double delta_rs(KacLabel label, double beta_sq);

enum class OperatorKind { spin, bulk_leg, boundary_leg };

double op_dimension(OperatorKind kind, int legs, double kappa);

std::vector<int> fusion_legs(int m, int n);

// Named dimensions that recur throughout, all as functions of kappa.
namespace dim {
inline double d21(double k) { return 3.0 / k - 0.5; }
inline double d31(double k) { return 8.0 / k - 1.0; }
inline double d51(double k) { return 24.0 / k - 2.0; }
inline double sigma(double k) { return 0.5 - 1.0 / k - 3.0 * k / 64.0; }
inline double d10(double k) { return (8.0 - k) / 16.0; }
inline double d20(double k) { return -k / 16.0 + 3.0 / k + 0.5; }
}  // namespace dim

}  // namespace sle
