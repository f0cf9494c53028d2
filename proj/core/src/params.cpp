#include "sle/params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sle/error.hpp"

namespace sle {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::pole: return "pole";
    case ErrorKind::cut: return "cut";
    case ErrorKind::degeneracy: return "degeneracy";
    case ErrorKind::accuracy: return "accuracy";
    case ErrorKind::resonance: return "resonance";
    case ErrorKind::singular_point: return "singular_point";
    case ErrorKind::step_underflow: return "step_underflow";
    case ErrorKind::reality: return "reality";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

const char* to_string(Phase phase) {
    switch (phase) {
    case Phase::dilute: return "dilute";
    case Phase::dense: return "dense";
    case Phase::boundary: return "boundary";
    }
    return "unknown";
}

ModelParams::ModelParams(double kappa) : kappa_(kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        fail(ErrorKind::domain, "kappa must be a positive finite number, got " + std::to_string(kappa));
}

std::optional<double> ModelParams::n() const {
    if (kappa_ < 2.0 || kappa_ > 8.0) return std::nullopt;
    return -2.0 * std::cos(4.0 * std::numbers::pi / kappa_);
}

std::optional<double> ModelParams::Q() const {
    auto v = n();
    if (!v) return std::nullopt;
    return *v * *v;
}

double ModelParams::central_charge() const {
    const double b2 = beta_sq();
    return 13.0 - 6.0 * b2 - 6.0 / b2;
}

Phase ModelParams::phase() const {
    if (kappa_ < 4.0) return Phase::dilute;
    if (kappa_ > 4.0) return Phase::dense;
    return Phase::boundary;
}

ModelParams model_from_kappa(double kappa) { return ModelParams(kappa); }

double delta_rs(KacLabel label, double beta_sq) {
    if (!(beta_sq > 0.0)) fail(ErrorKind::domain, "beta_sq must be positive");
    const double b = std::sqrt(beta_sq);
    auto P = [b](double r, double s) { return 0.5 * (r * b - s / b); };
    const double p = P(label.r, label.s), p11 = P(1.0, 1.0);
    return p * p - p11 * p11;
}

double op_dimension(OperatorKind kind, int legs, double kappa) {
    if (!(kappa > 0.0)) fail(ErrorKind::domain, "kappa must be positive");
    if (legs < 0) fail(ErrorKind::domain, "leg count must be non-negative");
    const double l = legs;
    switch (kind) {
    case OperatorKind::spin:
        return dim::sigma(kappa);
    case OperatorKind::bulk_leg:
        if (legs % 2 != 0) fail(ErrorKind::domain, "bulk leg operators need an even number of legs");
        return (4.0 * l * l - (kappa - 4.0) * (kappa - 4.0)) / (16.0 * kappa);
    case OperatorKind::boundary_leg:
        return l * (l + 2.0) / kappa - l / 2.0;
    }
    fail(ErrorKind::domain, "unknown operator kind");
}

std::vector<int> fusion_legs(int m, int n) {
    if (m < 0 || n < 0) fail(ErrorKind::domain, "leg counts must be non-negative");
    std::vector<int> out;
    for (int p = 0; p <= std::min(m, n); ++p) out.push_back(std::abs(m - n) + 2 * p);
    return out;
}

}  // namespace sle
