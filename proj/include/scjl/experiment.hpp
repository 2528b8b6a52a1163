#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scjl/bounds.hpp"
#include "scjl/counterexample.hpp"
#include "scjl/oracle.hpp"
#include "scjl/sketch.hpp"

namespace scjl {

// Calibration limits for exact-vs-bound ratios, measured once on the
// canonical report grids (60 seeds for the random-matrix rows) and frozen
// here.  run_bounds_report re-measures and fails any row whose ratio leaves
// its window.
inline constexpr double kFrozenHitczenkoLow = 0.40;    // measured [0.4330, 1.0000]
inline constexpr double kFrozenHitczenkoHigh = 1.05;
inline constexpr double kFrozenKhintchineC = 0.80;     // measured max 0.7072
inline constexpr double kFrozenHansonWrightC = 0.80;   // measured max 0.6246
inline constexpr double kFrozenQuadFormC = 1.45;       // measured max 1.3755
inline constexpr double kFrozenLatalaNonnegC = 1.01;   // measured max 1.0000
inline constexpr double kFrozenManyBinC = 1.75;        // measured max 1.6803

enum class FamilyKind { basis, uniform, two_spike, random_unit, file };

FamilyKind family_from_name(const std::string& name);
std::string family_name(FamilyKind kind);

// Unit vectors for a family.  basis: the first min(count, n) basis vectors;
// uniform and two_spike: one vector each; random_unit: count vectors of
// normalized gaussians (one derived seed per vector).  The file kind is
// served by ingest_vectors instead.
std::vector<std::vector<double>> make_family(FamilyKind kind, std::uint64_t n,
                                             std::uint64_t count, std::uint64_t seed);

// Parse a CSV of decimal rows into unit vectors (each row normalized).
// Malformed rows and zero rows raise invalid_argument naming the line.
std::vector<std::vector<double>> ingest_vectors(const std::string& path);

struct WilsonInterval {
    double low = 0.0;
    double high = 0.0;
};

// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(std::uint64_t failures, std::uint64_t trials);

struct DistortionConfig {
    double eps = 0.5;
    double delta = 0.05;
    double B = kMinB;
    double c_s = 1.0;
    double c_m = 1.0;
    std::uint64_t n = 256;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    std::uint64_t count = 0;  // vectors per family, 0 = per-family default
    std::vector<FamilyKind> families = {FamilyKind::basis, FamilyKind::uniform,
                                        FamilyKind::two_spike, FamilyKind::random_unit};
    std::string dataset_path;  // consumed by the file family
};

struct FamilyResult {
    FamilyKind kind = FamilyKind::basis;
    std::uint64_t vectors = 0;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double rate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    bool pass = false;  // Wilson lower bound <= delta
};

struct DistortionReport {
    DistortionConfig config;
    SketchParams params;
    std::vector<FamilyResult> rows;
    bool all_pass = true;
};

// Empirical P[| |Ax|^2 - 1 | > eps] per family; config.trials fresh
// matrices per family, spread over the family's vectors.
DistortionReport run_distortion(const DistortionConfig& config);

struct TradeoffConfig {
    double eps = 0.5;
    double delta = 0.05;
    double c_s = 1.0;
    double c_m = 1.0;
    std::uint64_t n = 256;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    std::uint64_t grid_points = 5;  // used when B_grid is empty
    std::vector<double> B_grid;     // empty = log-spaced from e to 1/delta
    FamilyKind family = FamilyKind::two_spike;
    std::uint64_t count = 0;
    std::string dataset_path;
};

struct TradeoffRow {
    double B_request = 0.0;
    SketchParams params;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double rate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    bool pass = false;
};

struct TradeoffReport {
    TradeoffConfig config;
    std::vector<TradeoffRow> rows;
    bool all_pass = true;
};

// Failure rate of one family across a B grid; each row re-resolves (s, m).
TradeoffReport run_tradeoff(const TradeoffConfig& config);

struct BoundsReportConfig {
    std::uint64_t seed = 0;
    double enum_budget = 1e9;  // cap on total exact-enumeration evaluations
    std::uint64_t matrices_per_size = 3;
    std::vector<std::uint64_t> chaos_sizes = {2, 4, 8, 12};
    std::vector<int> chaos_orders = {2, 4};
    std::vector<std::uint64_t> linform_sizes = {2, 4, 8, 16};
    std::vector<int> linform_orders = {2, 4, 8};
    std::vector<double> binom_alphas = {1.0 / 64, 1.0 / 32, 1.0 / 16,
                                        1.0 / 8,  1.0 / 4,  1.0 / 2};
    std::vector<std::uint64_t> binom_sizes = {1, 2, 3, 4, 6, 8, 12, 16, 24, 32};
    std::vector<int> binom_orders = {1, 2, 3, 4, 6, 8, 12, 16};
};

struct EvaluatorRow {
    std::string evaluator;
    std::uint64_t instances = 0;
    double min_ratio = 0.0;  // exact / bound over the grid
    double max_ratio = 0.0;
    double limit_low = 0.0;  // frozen window, low edge 0 = one-sided
    double limit_high = 0.0;
    std::string mode;  // quadform inner-norm mode, "-" elsewhere
    bool pass = false;
};

struct BoundsReport {
    BoundsReportConfig config;
    std::vector<EvaluatorRow> rows;
    bool all_pass = true;
};

// Exact-vs-bound ratio sweep: enumerated Rademacher linear forms against
// hitczenko/khintchine, enumerated quadratic forms on seeded gaussian
// matrices against hanson_wright/quadform, and exact binomial norms
// against latala_nonneg/manybin.  Empty grid axes are rejected.
BoundsReport run_bounds_report(const BoundsReportConfig& config);

// Artifact rendering.  Deterministic bytes: same inputs and seed produce
// identical strings.  Every artifact names the library version, the seed
// (for stochastic reports), and the resolved configuration.
std::string params_csv(const SketchParams& params);
std::string params_json(const SketchParams& params);
std::string distortion_csv(const DistortionReport& report);
std::string distortion_json(const DistortionReport& report);
std::string tradeoff_csv(const TradeoffReport& report);
std::string tradeoff_json(const TradeoffReport& report);
std::string bounds_report_csv(const BoundsReport& report);
std::string bounds_report_json(const BoundsReport& report);
std::string counterexample_csv(const CounterexampleReport& report);
std::string counterexample_json(const CounterexampleReport& report);

}  // namespace scjl
