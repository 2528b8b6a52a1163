#pragma once

#include <cstdint>
#include <vector>

#include "scjl/oracle.hpp"
#include "scjl/sketch.hpp"

namespace scjl {

// x = (1/sqrt(2), 1/sqrt(2), 0, ..., 0), the vector on which the generic
// quadratic-form moment bound is maximally loose.  Requires n >= 2.
std::vector<double> two_spike_vector(std::uint64_t n);

struct UpEstimate {
    MomentEstimate estimate;       // p-norm over trials of the per-matrix bound value
    double max_identity_gap = 0;   // worst |general expression - closed form| seen
};

// Monte Carlo p-norm of W = sqrt(p)*||M||_F + p*||M||_op, where M is the
// collision-weighted quadratic form M[i][j] = Q[i][j]*x[i]*x[j] (zero
// diagonal) of a freshly sampled matrix and x is the two-spike vector.
// For that x the value collapses to (sqrt(p)/sqrt(2) + p/2)*Q[0][1]; the
// general expression is evaluated anyway (full table, full eigensolve) and
// must match the closed form to 1e-9 on every trial, or a logic_error is
// thrown.  p must be an even integer >= 2.
UpEstimate u_p_estimate(const SketchParams& params, int p, std::uint64_t trials,
                        std::uint64_t seed);

// Sketch dimensions implied by a p-th moment bound of order p^2/log(B*p)
// (the two-spike weakness) versus order p/log(B), evaluated at p = ln(1/delta)
// with the same constants in both formulas:
//   loose:  s = ceil(c_s * p^2 / (eps * ln(B*p))),  m = ceil(c_m * B * s^2)
//   sharp:  s = ceil(c_s * p   / (eps * ln(B))),    m = ceil(c_m * B * s^2)
struct DimensionComparison {
    double eps = 0;
    double delta = 0;
    double B = 0;
    std::uint64_t hw_s = 0;
    std::uint64_t hw_m = 0;      // dimension implied by the loose route
    std::uint64_t paper_s = 0;
    std::uint64_t paper_m = 0;   // dimension from the sharp route
    double ratio = 0;            // hw_m / paper_m
};
DimensionComparison dimension_comparison(double eps, double delta, double B,
                                         double c_s = 1.0, double c_m = 1.0);

struct CounterexampleRow {
    int p = 0;
    std::uint64_t s = 0;
    std::uint64_t m = 0;
    double B = 0;                 // actual m/s^2 after rounding
    MomentEstimate u_p;           // Monte Carlo estimate of U_p
    double max_identity_gap = 0;
    double keyfail_value = 0;     // p * ||Q||_p, exact hypergeometric
    double z_norm = 0;            // ||Z||_p for the two-spike vector, exact
    double binom_norm = 0;        // ||Bin(s, s/m)||_p, exact (dominates ||Q||_p)
    double looseness = 0;         // u_p.value / z_norm
    double delta_row = 0;         // e^{-p}, the tail probability this p targets
    DimensionComparison dims;     // evaluated at (eps, delta_row)
};

struct CounterexampleReport {
    double eps = 0;
    double delta = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double c_s = 1.0;
    double c_m = 1.0;
    std::uint64_t n = 0;          // internal width used for sampling
    std::vector<CounterexampleRow> rows;
};

// One row per p on the grid {4, 8, 16, ...} doubling while p <= max(4,
// ln(1/delta)), with s = 2p and m = ceil(e * s^2) (so B stays near e).
// Each row pairs the Monte Carlo U_p with the exact ||Z||_p = ||Q||_p / s
// and the implied-dimension comparison at delta_row = e^{-p}.
CounterexampleReport compare_dimensions(double eps, double delta, std::uint64_t trials,
                                        std::uint64_t seed, double c_s = 1.0,
                                        double c_m = 1.0);

}  // namespace scjl
