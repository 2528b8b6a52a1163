#include "scjl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <omp.h>

#include "scjl/rng.hpp"

namespace scjl {

namespace {

constexpr std::uint64_t kChunk = 1024;  // fixed reduction chunk, independent of threads

double ipow(double v, int p) {
    double r = 1.0;
    for (int k = 0; k < p; ++k) r *= v;
    return r;
}

double lchoose(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Sum of squares accumulated in ascending row order.  Matches a full scan of
// the length-m buffer bit for bit because adding zero entries is exact.
double sum_squares_sorted(std::vector<std::uint32_t>& touched, const std::vector<double>& y) {
    std::sort(touched.begin(), touched.end());
    double acc = 0.0;
    for (auto r : touched) acc += y[r] * y[r];
    return acc;
}

struct NonzeroPattern {
    std::vector<std::uint32_t> idx;
    std::vector<double> val;
    double sum_x2 = 0.0;  // computed in index order over the nonzeros
};

NonzeroPattern nonzeros_of(const std::vector<double>& x) {
    NonzeroPattern nz;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != 0.0) {
            nz.idx.push_back(static_cast<std::uint32_t>(i));
            nz.val.push_back(x[i]);
            nz.sum_x2 += x[i] * x[i];
        }
    }
    return nz;
}

// Per-thread state for Monte Carlo trials.
struct TrialWorkspace {
    SubsetSampler sampler;
    std::vector<std::uint32_t> support;
    std::vector<double> y;
    std::vector<char> seen;
    std::vector<std::uint32_t> touched;

    void ensure(std::uint64_t m) {
        if (y.size() != m) {
            y.assign(m, 0.0);
            seen.assign(m, 0);
        }
    }
};

// One sampled matrix restricted to the nonzero columns of x; returns Z.
// Column i consumes the stream derived from (trial_seed, i), exactly as
// sample_sign_consistent does, so skipping zero columns changes nothing.
double sign_consistent_trial_error(std::uint64_t m, std::uint64_t s, const NonzeroPattern& nz,
                                   std::uint64_t trial_seed, TrialWorkspace& ws) {
    ws.ensure(m);
    ws.touched.clear();
    for (std::size_t k = 0; k < nz.idx.size(); ++k) {
        Xoshiro256 rng(derive_seed(trial_seed, nz.idx[k]));
        ws.sampler.sample(m, s, rng, ws.support);
        const double v = rng.next_sign() * nz.val[k];
        for (auto r : ws.support) {
            if (!ws.seen[r]) {
                ws.seen[r] = 1;
                ws.touched.push_back(r);
            }
            ws.y[r] += v;
        }
    }
    const double ss = sum_squares_sorted(ws.touched, ws.y);
    for (auto r : ws.touched) {
        ws.y[r] = 0.0;
        ws.seen[r] = 0;
    }
    const double sd = static_cast<double>(s);
    return (ss - sd * nz.sum_x2) / sd;
}

void check_moment_args(const SketchParams& params, const std::vector<double>& x, int p) {
    params.validate_for_sampling();
    if (x.size() != params.n) throw std::invalid_argument("moment: x has wrong dimension");
    if (p < 1) throw std::invalid_argument("moment: p must be >= 1");
}

double signed_root(double raw, int p) {
    if (raw == 0.0) return 0.0;
    if (raw < 0.0 && raw > -1e-12) return 0.0;  // enumeration rounding residue
    return std::copysign(std::pow(std::abs(raw), 1.0 / p), raw);
}

template <class PerTrial>
void run_chunked_trials(std::uint64_t trials, Exec exec, PerTrial&& per_trial,
                        std::vector<double>& part1, std::vector<double>& part2) {
    const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
    part1.assign(chunks, 0.0);
    part2.assign(chunks, 0.0);
    if (exec == Exec::parallel) {
#pragma omp parallel
        {
            TrialWorkspace ws;
#pragma omp for schedule(dynamic)
            for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
                const std::uint64_t lo = static_cast<std::uint64_t>(c) * kChunk;
                const std::uint64_t hi = std::min(trials, lo + kChunk);
                double s1 = 0.0, s2 = 0.0;
                for (std::uint64_t t = lo; t < hi; ++t) per_trial(t, ws, s1, s2);
                part1[c] = s1;
                part2[c] = s2;
            }
        }
    } else {
        TrialWorkspace ws;
        for (std::uint64_t c = 0; c < chunks; ++c) {
            const std::uint64_t lo = c * kChunk;
            const std::uint64_t hi = std::min(trials, lo + kChunk);
            double s1 = 0.0, s2 = 0.0;
            for (std::uint64_t t = lo; t < hi; ++t) per_trial(t, ws, s1, s2);
            part1[c] = s1;
            part2[c] = s2;
        }
    }
}

}  // namespace

// ----------------------------------------------------------------- error_Z

namespace {

template <class Matrix, class Scatter>
double error_from_scatter(const Matrix& A, const std::vector<double>& x, Scatter&& scatter) {
    if (x.size() != A.n) throw std::invalid_argument("error_Z: x has wrong dimension");
    std::vector<double> y(A.m, 0.0);
    double sum_x2 = 0.0;
    for (std::uint64_t i = 0; i < A.n; ++i) {
        if (x[i] == 0.0) continue;
        sum_x2 += x[i] * x[i];
        scatter(A.columns[i], x[i], y);
    }
    double ss = 0.0;
    for (double v : y) ss += v * v;
    const double sd = static_cast<double>(A.s);
    return (ss - sd * sum_x2) / sd;
}

}  // namespace

double error_Z(const SignConsistentMatrix& A, const std::vector<double>& x) {
    return error_from_scatter(A, x, [](const SignConsistentColumn& c, double xi, std::vector<double>& y) {
        const double v = c.sign * xi;
        for (auto r : c.rows) y[r] += v;
    });
}

double error_Z(const SparseJLMatrix& A, const std::vector<double>& x) {
    return error_from_scatter(A, x, [](const SparseJLColumn& c, double xi, std::vector<double>& y) {
        for (std::size_t k = 0; k < c.rows.size(); ++k) y[c.rows[k]] += c.signs[k] * xi;
    });
}

// ----------------------------------------------------------- collision_table

namespace {

std::uint32_t sorted_intersection_size(const std::vector<std::uint32_t>& a,
                                       const std::vector<std::uint32_t>& b) {
    std::uint32_t count = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else { ++count; ++i; ++j; }
    }
    return count;
}

template <class Matrix>
CollisionTable collisions_of(const Matrix& A) {
    CollisionTable t;
    t.n = A.n;
    t.counts.assign(A.n * A.n, 0);
    for (std::uint64_t i = 0; i < A.n; ++i)
        for (std::uint64_t j = i + 1; j < A.n; ++j) {
            const std::uint32_t q = sorted_intersection_size(A.columns[i].rows, A.columns[j].rows);
            t.counts[i * A.n + j] = q;
            t.counts[j * A.n + i] = q;
        }
    return t;
}

}  // namespace

CollisionTable collision_table(const SignConsistentMatrix& A) { return collisions_of(A); }
CollisionTable collision_table(const SparseJLMatrix& A) { return collisions_of(A); }

// ------------------------------------------------------------ exact moments

namespace {

std::uint64_t comb_u64(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > (unsigned __int128)1 << 62) return std::uint64_t(1) << 62;  // saturate
    }
    return static_cast<std::uint64_t>(r);
}

// All s-subsets of [0, m) in lexicographic order, as bitmasks when m <= 64
// and as flat index lists otherwise.
struct ComboList {
    std::uint64_t count = 0;
    std::uint64_t s = 0;
    bool use_masks = false;
    std::vector<std::uint64_t> masks;
    std::vector<std::uint32_t> flat;  // count * s entries

    const std::uint32_t* rows(std::uint64_t c) const { return flat.data() + c * s; }
};

ComboList enumerate_combos(std::uint64_t m, std::uint64_t s) {
    ComboList list;
    list.s = s;
    list.use_masks = (m <= 64);
    std::vector<std::uint32_t> cur(s);
    for (std::uint64_t i = 0; i < s; ++i) cur[i] = static_cast<std::uint32_t>(i);
    while (true) {
        ++list.count;
        if (list.use_masks) {
            std::uint64_t mask = 0;
            for (auto r : cur) mask |= std::uint64_t(1) << r;
            list.masks.push_back(mask);
        } else {
            list.flat.insert(list.flat.end(), cur.begin(), cur.end());
        }
        // next combination
        std::int64_t i = static_cast<std::int64_t>(s) - 1;
        while (i >= 0 && cur[i] == m - s + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (std::uint64_t j = i + 1; j < s; ++j) cur[j] = cur[j - 1] + 1;
    }
    return list;
}

struct EnumContext {
    const ComboList* combos;
    std::uint64_t n;
    std::uint64_t s;
    int p;
    std::vector<double> pairw;  // 2*x_i*x_j/s for i<j, row major packed
};

// Sum of Z^p over the half sign cube for one support assignment.
double sign_sum(const EnumContext& ctx, const std::vector<double>& coef) {
    const std::uint64_t n = ctx.n;
    const std::uint64_t half = std::uint64_t(1) << (n - 1);
    double acc = 0.0;
    std::vector<int> sigma(n, 1);
    for (std::uint64_t bits = 0; bits < half; ++bits) {
        for (std::uint64_t j = 1; j < n; ++j) sigma[j] = (bits >> (j - 1)) & 1 ? -1 : 1;
        double z = 0.0;
        std::size_t t = 0;
        for (std::uint64_t i = 0; i < n; ++i)
            for (std::uint64_t j = i + 1; j < n; ++j, ++t)
                if (coef[t] != 0.0) z += coef[t] * (sigma[i] * sigma[j]);
        acc += ipow(z, ctx.p);
    }
    return acc;
}

double enumerate_chunk(const EnumContext& ctx, const std::vector<double>& x, std::uint64_t c0) {
    const ComboList& combos = *ctx.combos;
    const std::uint64_t n = ctx.n;
    const std::uint64_t C = combos.count;
    std::vector<std::uint64_t> idx(n, 0);
    idx[0] = c0;
    std::vector<double> coef(n * (n - 1) / 2, 0.0);
    double chunk_acc = 0.0;
    while (true) {
        std::size_t t = 0;
        for (std::uint64_t i = 0; i < n; ++i)
            for (std::uint64_t j = i + 1; j < n; ++j, ++t) {
                std::uint32_t q;
                if (combos.use_masks) {
                    q = static_cast<std::uint32_t>(
                        __builtin_popcountll(combos.masks[idx[i]] & combos.masks[idx[j]]));
                } else {
                    const std::uint32_t* a = combos.rows(idx[i]);
                    const std::uint32_t* b = combos.rows(idx[j]);
                    q = 0;
                    std::uint64_t ia = 0, ib = 0;
                    while (ia < ctx.s && ib < ctx.s) {
                        if (a[ia] < b[ib]) ++ia;
                        else if (b[ib] < a[ia]) ++ib;
                        else { ++q; ++ia; ++ib; }
                    }
                }
                coef[t] = q * ctx.pairw[t];
            }
        chunk_acc += sign_sum(ctx, coef);
        // advance odometer over columns 1..n-1
        std::uint64_t d = n - 1;
        while (d >= 1) {
            if (++idx[d] < C) break;
            idx[d] = 0;
            --d;
        }
        if (d == 0) break;
    }
    (void)x;
    return chunk_acc;
}

}  // namespace

MomentEstimate exact_moment_Z(const SketchParams& params, const std::vector<double>& x, int p,
                              double budget, Exec exec) {
    check_moment_args(params, x, p);
    const std::uint64_t n = params.n, m = params.m, s = params.s;

    MomentEstimate est;
    est.p = p;
    est.method = "exact";

    if (n == 1) return est;  // no cross terms, Z is identically 0

    const std::uint64_t C = comb_u64(m, s);
    const double required = std::pow(static_cast<double>(C), static_cast<double>(n)) *
                            std::pow(2.0, static_cast<double>(n));
    if (required > budget) {
        char msg[192];
        std::snprintf(msg, sizeof msg,
                      "exact_moment_Z: enumeration requires %.0f evaluations "
                      "(C(%llu,%llu)^%llu * 2^%llu), budget is %.0f",
                      required, static_cast<unsigned long long>(m),
                      static_cast<unsigned long long>(s), static_cast<unsigned long long>(n),
                      static_cast<unsigned long long>(n), budget);
        throw BudgetError(msg, required, budget);
    }

    const ComboList combos = enumerate_combos(m, s);
    EnumContext ctx;
    ctx.combos = &combos;
    ctx.n = n;
    ctx.s = s;
    ctx.p = p;
    ctx.pairw.resize(n * (n - 1) / 2);
    std::size_t t = 0;
    for (std::uint64_t i = 0; i < n; ++i)
        for (std::uint64_t j = i + 1; j < n; ++j, ++t)
            ctx.pairw[t] = 2.0 * x[i] * x[j] / static_cast<double>(s);

    // one chunk per first-column support, combined in index order
    std::vector<double> partial(C, 0.0);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t c0 = 0; c0 < static_cast<std::int64_t>(C); ++c0)
            partial[c0] = enumerate_chunk(ctx, x, static_cast<std::uint64_t>(c0));
    } else {
        for (std::uint64_t c0 = 0; c0 < C; ++c0) partial[c0] = enumerate_chunk(ctx, x, c0);
    }
    double total = 0.0;
    for (double v : partial) total += v;

    const double weight = std::pow(static_cast<double>(C), -static_cast<double>(n)) /
                          std::pow(2.0, static_cast<double>(n - 1));
    est.raw_moment = total * weight;
    est.value = signed_root(est.raw_moment, p);
    est.trials = static_cast<std::uint64_t>(required / 2.0);
    return est;
}

// -------------------------------------------------------------- Monte Carlo

MomentEstimate mc_moment_Z(const SketchParams& params, const std::vector<double>& x, int p,
                           std::uint64_t trials, std::uint64_t seed, Exec exec) {
    check_moment_args(params, x, p);
    if (trials < 1) throw std::invalid_argument("mc_moment_Z: trials must be >= 1");
    const NonzeroPattern nz = nonzeros_of(x);

    std::vector<double> part1, part2;
    run_chunked_trials(trials, exec,
                       [&](std::uint64_t t, TrialWorkspace& ws, double& s1, double& s2) {
                           const double z = std::abs(sign_consistent_trial_error(
                               params.m, params.s, nz, derive_seed(seed, t), ws));
                           const double zp = ipow(z, p);
                           s1 += zp;
                           s2 += zp * zp;
                       },
                       part1, part2);
    double sum = 0.0, sum2 = 0.0;
    for (double v : part1) sum += v;
    for (double v : part2) sum2 += v;

    MomentEstimate est;
    est.p = p;
    est.method = "mc";
    est.trials = trials;
    const double td = static_cast<double>(trials);
    const double mean = sum / td;
    est.raw_moment = mean;
    est.value = mean > 0.0 ? std::pow(mean, 1.0 / p) : 0.0;
    if (trials > 1 && mean > 0.0) {
        const double var = std::max(0.0, (sum2 - td * mean * mean) / (td - 1.0));
        est.stderr_raw = std::sqrt(var / td);
        est.stderr_value = est.stderr_raw / (p * std::pow(mean, (p - 1.0) / p));
    }
    return est;
}

FailureRate mc_failure_rate(const SketchParams& params, const std::vector<double>& x, double eps,
                            std::uint64_t trials, std::uint64_t seed, Exec exec) {
    check_moment_args(params, x, 1);
    if (!(eps > 0.0)) throw std::invalid_argument("mc_failure_rate: eps must be positive");
    if (trials < 1) throw std::invalid_argument("mc_failure_rate: trials must be >= 1");
    const NonzeroPattern nz = nonzeros_of(x);

    std::vector<double> part1, part2;
    run_chunked_trials(trials, exec,
                       [&](std::uint64_t t, TrialWorkspace& ws, double& s1, double&) {
                           const double z = sign_consistent_trial_error(
                               params.m, params.s, nz, derive_seed(seed, t), ws);
                           if (std::abs(z) > eps) s1 += 1.0;
                       },
                       part1, part2);
    double fails = 0.0;
    for (double v : part1) fails += v;

    FailureRate r;
    r.trials = trials;
    r.failures = static_cast<std::uint64_t>(fails);
    r.rate = fails / static_cast<double>(trials);
    return r;
}

// --------------------------------------------------- closed-form moment laws

double binomial_moment_exact(const BinomialSpec& spec, double q) {
    if (spec.N < 1) throw std::invalid_argument("binomial_moment_exact: N must be >= 1");
    if (!(spec.alpha > 0.0 && spec.alpha <= 1.0))
        throw std::invalid_argument("binomial_moment_exact: alpha must be in (0, 1]");
    if (!(q >= 1.0)) throw std::invalid_argument("binomial_moment_exact: q must be >= 1");
    const double N = static_cast<double>(spec.N);
    if (spec.alpha == 1.0) return N;
    const double la = std::log(spec.alpha);
    const double l1a = std::log1p(-spec.alpha);
    double acc = 0.0;
    for (std::uint64_t k = 1; k <= spec.N; ++k) {
        const double kd = static_cast<double>(k);
        const double logterm = lchoose(N, kd) + kd * la + (N - kd) * l1a + q * std::log(kd);
        acc += std::exp(logterm);
    }
    return std::pow(acc, 1.0 / q);
}

double hypergeometric_moment_exact(std::uint64_t m, std::uint64_t s, double q) {
    if (s < 1 || s > m) throw std::invalid_argument("hypergeometric_moment_exact: need 1 <= s <= m");
    if (!(q >= 1.0)) throw std::invalid_argument("hypergeometric_moment_exact: q must be >= 1");
    const double md = static_cast<double>(m), sd = static_cast<double>(s);
    const double log_denom = lchoose(md, sd);
    const std::uint64_t lo = (2 * s > m) ? 2 * s - m : 0;
    double acc = 0.0;
    for (std::uint64_t k = std::max<std::uint64_t>(lo, 1); k <= s; ++k) {
        const double kd = static_cast<double>(k);
        const double logterm =
            lchoose(sd, kd) + lchoose(md - sd, sd - kd) - log_denom + q * std::log(kd);
        acc += std::exp(logterm);
    }
    return std::pow(acc, 1.0 / q);
}

}  // namespace scjl
