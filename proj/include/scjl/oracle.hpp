#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "scjl/sketch.hpp"

namespace scjl {

// Thrown when an exact enumeration would exceed its evaluation budget.
class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& what, double required, double cap)
        : std::runtime_error(what), required_evaluations(required), budget(cap) {}
    double required_evaluations;
    double budget;
};

// Symmetric n x n table of pairwise support collisions, zero diagonal.
struct CollisionTable {
    std::uint64_t n = 0;
    std::vector<std::uint32_t> counts;  // row major

    std::uint32_t at(std::uint64_t i, std::uint64_t j) const { return counts[i * n + j]; }
};

struct MomentEstimate {
    int p = 0;
    double value = 0.0;        // E[Z^p]^(1/p) (exact) or (mean |Z|^p)^(1/p) (mc)
    double raw_moment = 0.0;   // E[Z^p] or mean |Z|^p
    std::string method;        // "exact" | "mc"
    double stderr_value = 0.0; // delta-method standard error of value (mc only)
    double stderr_raw = 0.0;   // standard error of the raw mean (mc only)
    std::uint64_t trials = 0;  // mc trials, or enumeration size for exact
};

struct FailureRate {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double rate = 0.0;
};

struct BinomialSpec {
    std::uint64_t N = 1;
    double alpha = 0.5;  // success probability, (0, 1]
};

// Sketch error Z = |Ax|_2^2 - |x|_2^2 for a unit vector x.  The diagonal
// term is cancelled exactly (each column hits exactly s rows), so x = e_i
// gives 0 with no floating residue.
double error_Z(const SignConsistentMatrix& A, const std::vector<double>& x);
double error_Z(const SparseJLMatrix& A, const std::vector<double>& x);

CollisionTable collision_table(const SignConsistentMatrix& A);
CollisionTable collision_table(const SparseJLMatrix& A);

// Exact E[Z^p]^(1/p) for the sign-consistent distribution by exhaustive
// enumeration of all column supports and column signs.  The work is
// C(m,s)^n * 2^n evaluations; a BudgetError (naming the required count) is
// thrown when that exceeds `budget`.  Global sign flip leaves Z unchanged,
// so only half the sign vectors are visited.
MomentEstimate exact_moment_Z(const SketchParams& params, const std::vector<double>& x, int p,
                              double budget = 1e7, Exec exec = Exec::parallel);

// Monte Carlo (mean |Z|^p)^(1/p) over fresh matrices, one derived seed per
// trial.  Reduction is chunked in a fixed order, so results are
// byte-identical for any thread count.
MomentEstimate mc_moment_Z(const SketchParams& params, const std::vector<double>& x, int p,
                           std::uint64_t trials, std::uint64_t seed, Exec exec = Exec::parallel);

// Empirical P[|Z| > eps] over fresh matrices.
FailureRate mc_failure_rate(const SketchParams& params, const std::vector<double>& x, double eps,
                            std::uint64_t trials, std::uint64_t seed, Exec exec = Exec::parallel);

// Exact q-norms E[X^q]^(1/q), q >= 1 real, pmf terms evaluated in log domain.
double binomial_moment_exact(const BinomialSpec& spec, double q);

// X = |S1 ^ S2| for independent uniform s-subsets of [m]; X ~ Hypergeometric(m, s, s).
double hypergeometric_moment_exact(std::uint64_t m, std::uint64_t s, double q);

}  // namespace scjl
