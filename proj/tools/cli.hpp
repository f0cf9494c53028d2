#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace sle::cli {

enum Exit { ok = 0, usage = 1, failure = 2, verification = 3 };

// Default probes for a box of width W, in lattice units: a 5x5 grid around
// the wired interval [-W/16, W/16] for connectivity, three points on the
// circle of radius W/16 for left passage.
std::vector<std::complex<double>> default_connectivity_probes(int W);
std::vector<std::complex<double>> default_lpp_probes(int W);

// Runs one command line (argv without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sle::cli
