#include "scjl/reference.hpp"

#include <cmath>
#include <stdexcept>

#include "scjl/rng.hpp"

namespace scjl::reference {

namespace {

void check_vector(const SketchParams& params, const std::vector<double>& x) {
    if (x.size() != params.n)
        throw std::invalid_argument("reference: vector length does not match n");
}

// Z computed exactly as the production kernels do: unscaled row sums, then
// (|y|^2 - s * |x|^2) / s, so the diagonal cancels without residue.
double trial_error(const SketchParams& params, const std::vector<double>& x,
                   std::uint64_t trial_seed) {
    const SignConsistentMatrix A = sample_sign_consistent(params, trial_seed, Exec::serial);
    const std::vector<double> dense = dense_entries(A);
    double ss = 0.0;
    for (std::uint64_t r = 0; r < A.m; ++r) {
        double y = 0.0;
        for (std::uint64_t j = 0; j < A.n; ++j) y += dense[r * A.n + j] * x[j];
        ss += y * y;
    }
    double sum_x2 = 0.0;
    for (double v : x) sum_x2 += v * v;
    const double s = static_cast<double>(A.s);
    return (ss - s * sum_x2) / s;
}

}  // namespace

std::vector<double> dense_entries(const SignConsistentMatrix& A) {
    std::vector<double> dense(A.m * A.n, 0.0);
    for (std::uint64_t j = 0; j < A.n; ++j)
        for (const std::uint32_t r : A.columns[j].rows)
            dense[static_cast<std::uint64_t>(r) * A.n + j] =
                static_cast<double>(A.columns[j].sign);
    return dense;
}

std::vector<double> apply_dense(const SignConsistentMatrix& A, const std::vector<double>& x) {
    if (x.size() != A.n) throw std::invalid_argument("reference: vector length does not match n");
    const std::vector<double> dense = dense_entries(A);
    std::vector<double> y(A.m, 0.0);
    for (std::uint64_t r = 0; r < A.m; ++r)
        for (std::uint64_t j = 0; j < A.n; ++j) y[r] += dense[r * A.n + j] * x[j];
    const double scale = A.scale();
    for (double& v : y) v *= scale;
    return y;
}

double error_Z_dense(const SignConsistentMatrix& A, const std::vector<double>& x) {
    if (x.size() != A.n) throw std::invalid_argument("reference: vector length does not match n");
    const std::vector<double> dense = dense_entries(A);
    double ss = 0.0;
    for (std::uint64_t r = 0; r < A.m; ++r) {
        double y = 0.0;
        for (std::uint64_t j = 0; j < A.n; ++j) y += dense[r * A.n + j] * x[j];
        ss += y * y;
    }
    double sum_x2 = 0.0;
    for (double v : x) sum_x2 += v * v;
    const double s = static_cast<double>(A.s);
    return (ss - s * sum_x2) / s;
}

MomentEstimate mc_moment_Z(const SketchParams& params, const std::vector<double>& x, int p,
                           std::uint64_t trials, std::uint64_t seed) {
    params.validate_for_sampling();
    check_vector(params, x);
    if (p < 1) throw std::invalid_argument("reference: p must be >= 1");
    if (trials == 0) throw std::invalid_argument("reference: trials must be >= 1");

    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const double z = std::abs(trial_error(params, x, derive_seed(seed, t)));
        double zp = 1.0;
        for (int k = 0; k < p; ++k) zp *= z;
        sum += zp;
        sum_sq += zp * zp;
    }

    const double td = static_cast<double>(trials);
    const double mean = sum / td;
    MomentEstimate est;
    est.p = p;
    est.method = "mc";
    est.trials = trials;
    est.raw_moment = mean;
    est.value = mean > 0.0 ? std::pow(mean, 1.0 / p) : 0.0;
    if (trials > 1) {
        const double var = (sum_sq - sum * sum / td) / (td - 1.0);
        est.stderr_raw = std::sqrt(std::max(var, 0.0) / td);
        if (mean > 0.0)
            est.stderr_value = est.stderr_raw / (p * std::pow(mean, (p - 1.0) / p));
    }
    return est;
}

FailureRate mc_failure_rate(const SketchParams& params, const std::vector<double>& x, double eps,
                            std::uint64_t trials, std::uint64_t seed) {
    params.validate_for_sampling();
    check_vector(params, x);
    if (!(eps > 0.0)) throw std::invalid_argument("reference: eps must be positive");
    if (trials == 0) throw std::invalid_argument("reference: trials must be >= 1");

    FailureRate fr;
    fr.trials = trials;
    for (std::uint64_t t = 0; t < trials; ++t)
        if (std::abs(trial_error(params, x, derive_seed(seed, t))) > eps) ++fr.failures;
    fr.rate = static_cast<double>(fr.failures) / static_cast<double>(trials);
    return fr;
}

}  // namespace scjl::reference
