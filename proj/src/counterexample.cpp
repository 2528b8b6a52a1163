#include "scjl/counterexample.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "scjl/bounds.hpp"
#include "scjl/rng.hpp"

namespace scjl {

namespace {

constexpr double kE = 2.718281828459045235360287471352662498;
constexpr double kIdentityTol = 1e-9;

std::uint64_t ceil_to_u64(double v) {
    const double c = std::ceil(v);
    if (!(c >= 0.0) || c > 9.007199254740992e15) throw std::invalid_argument("parameter overflow");
    return static_cast<std::uint64_t>(c);
}

}  // namespace

std::vector<double> two_spike_vector(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("two_spike_vector: n must be >= 2");
    std::vector<double> x(n, 0.0);
    x[0] = 1.0 / std::sqrt(2.0);
    x[1] = x[0];
    return x;
}

UpEstimate u_p_estimate(const SketchParams& params, int p, std::uint64_t trials,
                        std::uint64_t seed) {
    params.validate_for_sampling();
    if (params.n < 2) throw std::invalid_argument("u_p_estimate: n must be >= 2");
    if (p < 2 || p % 2 != 0) throw std::invalid_argument("u_p_estimate: p must be an even integer >= 2");
    if (trials == 0) throw std::invalid_argument("u_p_estimate: trials must be >= 1");

    const std::uint64_t n = params.n;
    const std::vector<double> x = two_spike_vector(n);
    const double sp = std::sqrt(static_cast<double>(p));
    const double simple_coeff = sp / std::sqrt(2.0) + static_cast<double>(p) / 2.0;

    double sum = 0.0, sum_sq = 0.0, max_gap = 0.0;
    std::vector<double> entries(n * n);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const SignConsistentMatrix A = sample_sign_consistent(params, derive_seed(seed, t), Exec::serial);
        const CollisionTable table = collision_table(A);

        double fro2 = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) {
            for (std::uint64_t j = 0; j < n; ++j) {
                const double mij = i == j ? 0.0 : table.at(i, j) * x[i] * x[j];
                entries[i * n + j] = mij;
                fro2 += mij * mij;
            }
        }
        const QuadForm M = QuadForm::from_dense(n, entries);
        const double general = sp * std::sqrt(fro2) + static_cast<double>(p) * operator_norm(M);
        const double simple = simple_coeff * static_cast<double>(table.at(0, 1));
        const double gap = std::abs(general - simple);
        if (gap > max_gap) max_gap = gap;
        if (gap > kIdentityTol) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "u_p_estimate: general form %.17g disagrees with closed form %.17g",
                          general, simple);
            throw std::logic_error(buf);
        }

        double wp = 1.0;
        for (int k = 0; k < p; ++k) wp *= general;
        sum += wp;
        sum_sq += wp * wp;
    }

    const double td = static_cast<double>(trials);
    const double mean = sum / td;

    UpEstimate out;
    out.max_identity_gap = max_gap;
    out.estimate.p = p;
    out.estimate.method = "mc";
    out.estimate.trials = trials;
    out.estimate.raw_moment = mean;
    out.estimate.value = mean > 0.0 ? std::pow(mean, 1.0 / p) : 0.0;
    if (trials > 1) {
        const double var = (sum_sq - sum * sum / td) / (td - 1.0);
        out.estimate.stderr_raw = std::sqrt(std::max(var, 0.0) / td);
        if (mean > 0.0)
            out.estimate.stderr_value =
                out.estimate.stderr_raw / (p * std::pow(mean, (p - 1.0) / p));
    }
    return out;
}

DimensionComparison dimension_comparison(double eps, double delta, double B, double c_s,
                                         double c_m) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("dimension_comparison: eps must be in (0, 1)");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("dimension_comparison: delta must be in (0, 1)");
    if (!(B >= kE)) throw std::invalid_argument("dimension_comparison: B must be >= e");
    if (!(c_s > 0.0) || !(c_m > 0.0)) throw std::invalid_argument("dimension_comparison: constants must be positive");

    DimensionComparison out;
    out.eps = eps;
    out.delta = delta;
    out.B = B;

    const double p = std::log(1.0 / delta);
    out.hw_s = std::max<std::uint64_t>(1, ceil_to_u64(c_s * p * p / (eps * std::log(B * p))));
    out.hw_m = std::max<std::uint64_t>(out.hw_s,
                                       ceil_to_u64(c_m * B * static_cast<double>(out.hw_s) *
                                                   static_cast<double>(out.hw_s)));

    const SketchParams sharp = select_params(eps, delta, B, c_s, c_m);
    out.paper_s = sharp.s;
    out.paper_m = sharp.m;
    out.ratio = static_cast<double>(out.hw_m) / static_cast<double>(out.paper_m);
    return out;
}

CounterexampleReport compare_dimensions(double eps, double delta, std::uint64_t trials,
                                        std::uint64_t seed, double c_s, double c_m) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("compare_dimensions: eps must be in (0, 1)");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("compare_dimensions: delta must be in (0, 1)");
    if (trials == 0) throw std::invalid_argument("compare_dimensions: trials must be >= 1");

    CounterexampleReport report;
    report.eps = eps;
    report.delta = delta;
    report.trials = trials;
    report.seed = seed;
    report.c_s = c_s;
    report.c_m = c_m;
    report.n = 8;

    const double p_cap = std::max(4.0, std::log(1.0 / delta));
    std::uint64_t row_index = 0;
    for (int p = 4; static_cast<double>(p) <= p_cap; p *= 2) {
        CounterexampleRow row;
        row.p = p;
        row.s = 2ULL * static_cast<std::uint64_t>(p);
        row.m = ceil_to_u64(kE * static_cast<double>(row.s) * static_cast<double>(row.s));
        row.B = static_cast<double>(row.m) /
                (static_cast<double>(row.s) * static_cast<double>(row.s));
        row.delta_row = std::exp(-static_cast<double>(p));

        SketchParams params;
        params.eps = eps;
        params.delta = row.delta_row;
        params.B = row.B;
        params.c_s = c_s;
        params.c_m = c_m;
        params.s = row.s;
        params.m = row.m;
        params.n = report.n;

        const UpEstimate up = u_p_estimate(params, p, trials, derive_seed(seed, row_index));
        row.u_p = up.estimate;
        row.max_identity_gap = up.max_identity_gap;

        const double q_norm = hypergeometric_moment_exact(row.m, row.s, p);
        row.keyfail_value = static_cast<double>(p) * q_norm;
        row.z_norm = q_norm / static_cast<double>(row.s);
        BinomialSpec bin;
        bin.N = row.s;
        bin.alpha = static_cast<double>(row.s) / static_cast<double>(row.m);
        row.binom_norm = binomial_moment_exact(bin, p);
        row.looseness = row.u_p.value / row.z_norm;
        row.dims = dimension_comparison(eps, row.delta_row, row.B, c_s, c_m);

        report.rows.push_back(row);
        ++row_index;
    }
    return report;
}

}  // namespace scjl
