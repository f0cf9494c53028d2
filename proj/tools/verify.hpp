#pragma once

#include <functional>
#include <string>
#include <vector>

namespace sle::verify {

enum class Status { pass, fail, skipped };

const char* to_string(Status s);

struct CheckResult {
    std::string name;
    Status status = Status::pass;
    std::string detail;
    double seconds = 0.0;
};

// Individual checks, usable on their own (the acceptance binary calls them directly).
CheckResult kappa6_constants();
CheckResult mc_corroboration();
CheckResult ode_residuals(double kappa, int n_points = 25, double tol = 1e-7);
CheckResult second_order_crossing(double kappa, double tol = 1e-8);
CheckResult third_order_crossing(double kappa, double exp_tol = 1e-3, double d1_tol = 1e-6);
CheckResult geometry_invariants(int n_points = 10000, double tol = 1e-13);
CheckResult boundary_ladders(double kappa, double tol = 1e-3);
CheckResult greens_scaling(double kappa, double tol = 1e-10);
CheckResult greens_kappa6_pair(double tol = 1e-10);
CheckResult left_passage_checks(double tol = 1e-12);
CheckResult bubble_reality(double kappa, double phase_tol = 1e-6, double c1_tol = 1e-5);

// The suite behind `verify`: kappa-dependent checks at each kappa plus the fixed ones.
std::vector<CheckResult> run_suite(const std::vector<double>& kappas);

// Runs fn, catching library errors as failures, and times it.
CheckResult timed(const std::string& name, const std::function<void(CheckResult&)>& fn);

}  // namespace sle::verify
