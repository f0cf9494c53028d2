#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace sle::mc {

using cplx = std::complex<double>;

struct McConfig {
    int box_width = 512;    // sites per row
    int box_height = 256;   // rows
    double spacing = 1.0;   // lattice unit in continuum coordinates
    std::pair<double, double> wired_interval{-32.0, 32.0};
    double p = 0.5;
    std::uint64_t seed = 0;
    long n_samples = 0;
};

struct McEstimate {
    std::vector<cplx> probes;
    std::vector<double> means;
    std::vector<double> std_errors;
    long n_samples = 0;
    std::uint64_t seed = 0;
};

// Triangular lattice in brick layout. Row r sits at height (r + 1/2) sqrt(3)/2 a,
// odd rows are shifted right by a/2, and x = 0 is the box's vertical midline.
struct Lattice {
    int W, H;
    double a;

    double x(int col, int row) const { return (col + 0.5 * (row & 1) - 0.5 * W) * a; }
    double y(int row) const;
    cplx pos(int col, int row) const { return {x(col, row), y(row)}; }
    bool inside(int col, int row) const { return col >= 0 && col < W && row >= 0 && row < H; }
    int index(int col, int row) const { return row * W + col; }
    // nearest site to a continuum point; throws a domain error outside the box
    int nearest(cplx z) const;
    // the six neighbours, in the same order for every site
    std::array<std::pair<int, int>, 6> neighbours(int col, int row) const;
};

// i.i.d. occupation of one sample, bit-identical for a given (seed, sample).
std::vector<std::uint8_t> sample_occupation(const McConfig& cfg, long sample);

// Canonical cluster labels (smallest site index in the cluster; -1 for empty sites).
std::vector<int> cluster_labels_union_find(int W, int H, std::span<const std::uint8_t> occ);
std::vector<int> cluster_labels_bfs(int W, int H, std::span<const std::uint8_t> occ);

McEstimate sample_connectivity(const McConfig& cfg, std::span<const cplx> probes, int threads = 0);

// Exploration path between black (left of the origin) and white boundary sites,
// from the origin to the top of the box, as triangle centres.
std::vector<cplx> trace_interface(const McConfig& cfg, long sample);
std::vector<cplx> trace_interface(int W, int H, double a, std::span<const std::uint8_t> occ);
// True when the path passes to the left of the probe.
bool passes_left(std::span<const cplx> path, cplx probe);

McEstimate trace_interface_lpp(const McConfig& cfg, std::span<const cplx> probes, int threads = 0);

struct ShapeFit {
    double constant;
    double rms_rel_error;
};

ShapeFit fit_shape(const McEstimate& estimate, std::span<const double> formula_values);

}  // namespace sle::mc
