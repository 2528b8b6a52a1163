#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace scjl {

enum class Exec { serial, parallel };

// Smallest legal tradeoff parameter; selection requires e <= B <= 1/delta.
inline constexpr double kMinB = 2.718281828459045235360287471352662498;

// Parameters of the sketching distribution.  eps/delta/B drive selection,
// s/m are the resolved sparsity and target dimension, n is the data
// dimension (set at sampling time, 0 until then).
struct SketchParams {
    double eps = 0.0;
    double delta = 0.0;
    double B = 0.0;       // tradeoff parameter, equals m / s^2 after rounding
    double c_s = 1.0;
    double c_m = 1.0;
    std::uint64_t s = 0;  // nonzeros per column
    std::uint64_t m = 0;  // sketch dimension
    std::uint64_t n = 0;  // data dimension

    void validate_for_sampling() const;
};

// Resolve (s, m) from (eps, delta, B):
//   s = max(1, ceil(c_s * eps^-1 * ln(1/delta) / ln B))
//   m = max(s, ceil(c_m * B * s^2))
// and recompute B = m / s^2 so the invariant holds exactly after rounding.
SketchParams select_params(double eps, double delta, double B,
                           double c_s = 1.0, double c_m = 1.0);

// One sketch column: s distinct rows (sorted ascending) and its sign data.
struct SignConsistentColumn {
    std::vector<std::uint32_t> rows;
    int sign = 1;  // one Rademacher sign shared by the whole column
};

struct SparseJLColumn {
    std::vector<std::uint32_t> rows;
    std::vector<int> signs;  // independent Rademacher sign per entry
};

// Sign-consistent sparse matrix: column j is (1/sqrt(s)) * sigma_j on the
// s rows of its support, zero elsewhere.
struct SignConsistentMatrix {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t s = 0;
    std::uint64_t seed = 0;
    std::vector<SignConsistentColumn> columns;

    double scale() const;
};

// Baseline comparator with a fresh sign per nonzero entry.
struct SparseJLMatrix {
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t s = 0;
    std::uint64_t seed = 0;
    std::vector<SparseJLColumn> columns;

    double scale() const;
};

// Samplers.  Column i uses the stream derived from (seed, i); columns are
// filled in parallel and the result is byte-identical for any thread count.
SignConsistentMatrix sample_sign_consistent(const SketchParams& params, std::uint64_t seed,
                                            Exec exec = Exec::parallel);
SparseJLMatrix sample_sparse_jl(const SketchParams& params, std::uint64_t seed,
                                Exec exec = Exec::parallel);

// y = A x, cost O(s * nnz(x)).
std::vector<double> apply(const SignConsistentMatrix& A, const std::vector<double>& x);
std::vector<double> apply(const SparseJLMatrix& A, const std::vector<double>& x);

// JSON persistence (format "scjl-matrix-v1"), lossless round trip.
std::string to_json(const SignConsistentMatrix& A);
std::string to_json(const SparseJLMatrix& A);
SignConsistentMatrix sign_consistent_from_json(const std::string& text);
SparseJLMatrix sparse_jl_from_json(const std::string& text);
std::string matrix_kind_of_json(const std::string& text);

}  // namespace scjl
