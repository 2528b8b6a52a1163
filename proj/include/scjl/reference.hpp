#pragma once

#include <cstdint>
#include <vector>

#include "scjl/oracle.hpp"
#include "scjl/sketch.hpp"

namespace scjl::reference {

// Naive single-threaded counterparts of the production kernels, kept as a
// correctness yardstick and benchmark baseline.  They draw the same
// per-column streams, so failure counts match the parallel kernels
// exactly; floating-point sums may differ only by reduction order.

// Dense unscaled entries (sign or 0), row major, m x n.
std::vector<double> dense_entries(const SignConsistentMatrix& A);

// y = A x through the dense expansion, O(m n).
std::vector<double> apply_dense(const SignConsistentMatrix& A, const std::vector<double>& x);

// |Ax|^2 - |x|^2 through the dense expansion.
double error_Z_dense(const SignConsistentMatrix& A, const std::vector<double>& x);

// Plain-loop Monte Carlo moment: one full matrix per trial, running sum.
MomentEstimate mc_moment_Z(const SketchParams& params, const std::vector<double>& x, int p,
                           std::uint64_t trials, std::uint64_t seed);

// Plain-loop empirical P[|Z| > eps].
FailureRate mc_failure_rate(const SketchParams& params, const std::vector<double>& x, double eps,
                            std::uint64_t trials, std::uint64_t seed);

}  // namespace scjl::reference
