#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "scjl/oracle.hpp"

namespace scjl {

// Symmetric matrix with zero diagonal, the shape every quadratic-form bound
// in this module expects.
struct QuadForm {
    std::uint64_t n = 0;
    std::vector<double> a;  // row major, n*n

    double at(std::uint64_t i, std::uint64_t j) const { return a[i * n + j]; }

    static QuadForm from_dense(std::uint64_t n, std::vector<double> entries);
};

// |sum_i sigma_i x_i|_p evaluator: sum of the p largest |x_i| plus
// sqrt(p) times the l2 norm of the rest.
double hitczenko_bound(const std::vector<double>& x, int p);

// sqrt(q) * |a|_2.
double khintchine_bound(const std::vector<double>& a, double q);

// Largest |eigenvalue|.  Exact symmetric eigensolve for n <= 64, power
// iteration (tolerance 1e-10, at most 100000 iterations) above.
double operator_norm(const QuadForm& A);

// sqrt(p) * |A|_F + p * |A|_op.
double hanson_wright_bound(const QuadForm& A, double p);

// Exact E|sum_j a_j sigma_j|^q ^ (1/q) by Gray-code sign enumeration,
// length capped at 26.
double rademacher_linform_norm_exact(const std::vector<double>& a, double q);

// Exact E|sigma^T A sigma|^q ^ (1/q), n capped at 26.
double chaos_norm_exact(const QuadForm& A, double q);

enum class InnerNorm { exact_enumeration, hitczenko };

struct QuadFormBound {
    double value = 0.0;
    double head = 0.0;       // l1 mass of the leading q x q minor
    double tail = 0.0;       // sqrt(q) * sqrt(sum_i |row tail form|_q^2)
    InnerNorm mode_used = InnerNorm::exact_enumeration;
    bool forced_fallback = false;  // exact requested but tail longer than 20
};

// Head l1 mass over the q x q leading minor plus sqrt(q) times the l2
// aggregate of the per-row tail Rademacher form q-norms.  The index order
// given is trusted to be the intended one (the bound is valid for any
// fixed order).  Tail q-norms are exact for tail length <= 20, Hitczenko
// otherwise.
QuadFormBound quadform_bound(const QuadForm& A, int q,
                             InnerNorm mode = InnerNorm::exact_enumeration);

struct LatalaThreshold {
    double T = 0.0;
    double q = 0.0;
    double residual = 0.0;  // sum_i log E[(1 + X_i/T)^q] at the returned T
    bool degenerate = false;
    std::uint64_t evaluations = 0;
};

// Smallest T (to relative tolerance) with
//   sum_{i<n} log moment_evaluator(i, T) <= q,
// where moment_evaluator(i, T) supplies E[(1 + X_i/T)^q] for a symmetric
// summand X_i.  Bracketed bisection; degenerate inputs (condition holds for
// every T) return the bracket floor with the degenerate flag set.
LatalaThreshold latala_symmetric_T(const std::function<double(std::size_t, double)>& moment_evaluator,
                                   std::size_t n, double q, double rel_tol = 1e-6);

struct NonnegBound {
    double value = 0.0;
    double t_at_max = 1.0;
};

// sup over t in [1, q] of (q/t) (n/q)^(1/t) |X|_t for iid nonnegative
// summands, evaluated on a log-spaced grid (>= 200 points) together with
// any analytic interior candidates supplied by the caller.
NonnegBound latala_nonneg_bound(const std::function<double(double)>& norm_evaluator,
                                std::uint64_t n, double q, std::size_t grid_points = 200,
                                const std::vector<double>& candidates = {});

struct ManyBinBound {
    double value = 0.0;
    double B = 0.0;
    bool log_branch = false;  // true when B >= e (value q / ln B)
};

// Moment bound for X ~ Bin(N, alpha) at order q >= 1 with
// B = q / (alpha * max(N, q)): q / ln B when B >= e, else q / B.
ManyBinBound manybin_bound(const BinomialSpec& spec, double q);

}  // namespace scjl
