#include "scjl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "scjl/rng.hpp"

namespace scjl {

namespace {

constexpr double kE = 2.718281828459045235360287471352662498;
constexpr std::uint64_t kEnumCap = 26;
constexpr std::uint64_t kExactTailLimit = 20;
constexpr std::uint64_t kEigenLimit = 64;
constexpr double kPowerTol = 1e-10;
constexpr std::uint64_t kPowerIterCap = 100000;

double q_power(double v, double q) {
    const double a = std::abs(v);
    if (a == 0.0) return 0.0;
    const int qi = static_cast<int>(q);
    if (q == static_cast<double>(qi) && qi <= 64) {
        double r = 1.0;
        for (int k = 0; k < qi; ++k) r *= a;
        return r;
    }
    return std::pow(a, q);
}

}  // namespace

QuadForm QuadForm::from_dense(std::uint64_t n, std::vector<double> entries) {
    if (entries.size() != n * n) throw std::invalid_argument("QuadForm: wrong entry count");
    for (std::uint64_t i = 0; i < n; ++i) {
        if (entries[i * n + i] != 0.0) throw std::invalid_argument("QuadForm: diagonal must be zero");
        for (std::uint64_t j = i + 1; j < n; ++j)
            if (entries[i * n + j] != entries[j * n + i])
                throw std::invalid_argument("QuadForm: matrix must be symmetric");
    }
    QuadForm A;
    A.n = n;
    A.a = std::move(entries);
    return A;
}

double hitczenko_bound(const std::vector<double>& x, int p) {
    if (p < 1) throw std::invalid_argument("hitczenko_bound: p must be >= 1");
    std::vector<double> mag(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) mag[i] = std::abs(x[i]);
    std::sort(mag.begin(), mag.end(), std::greater<>());
    const std::size_t head_len = std::min<std::size_t>(p, mag.size());
    double head = 0.0;
    for (std::size_t i = 0; i < head_len; ++i) head += mag[i];
    double tail2 = 0.0;
    for (std::size_t i = head_len; i < mag.size(); ++i) tail2 += mag[i] * mag[i];
    return head + std::sqrt(static_cast<double>(p)) * std::sqrt(tail2);
}

double khintchine_bound(const std::vector<double>& a, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("khintchine_bound: q must be >= 1");
    double s2 = 0.0;
    for (double v : a) s2 += v * v;
    return std::sqrt(q) * std::sqrt(s2);
}

double operator_norm(const QuadForm& A) {
    if (A.n == 0) return 0.0;
    const std::int64_t n = static_cast<std::int64_t>(A.n);
    if (A.n <= kEigenLimit) {
        Eigen::MatrixXd M(n, n);
        for (std::int64_t i = 0; i < n; ++i)
            for (std::int64_t j = 0; j < n; ++j) M(i, j) = A.a[i * n + j];
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M, Eigen::EigenvaluesOnly);
        const auto& ev = solver.eigenvalues();
        return std::max(std::abs(ev(0)), std::abs(ev(n - 1)));
    }
    // power iteration on a deterministic pseudo-random start
    Eigen::MatrixXd M(n, n);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j) M(i, j) = A.a[i * n + j];
    Xoshiro256 rng(0x5eedULL);
    Eigen::VectorXd v(n);
    for (std::int64_t i = 0; i < n; ++i) v(i) = rng.next_gaussian();
    v.normalize();
    double lambda = 0.0;
    for (std::uint64_t it = 0; it < kPowerIterCap; ++it) {
        Eigen::VectorXd w = M * v;
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;
        const double prev = lambda;
        lambda = norm;
        v = w / norm;
        if (it > 0 && std::abs(lambda - prev) <= kPowerTol * std::max(1.0, lambda)) break;
    }
    return lambda;
}

double hanson_wright_bound(const QuadForm& A, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("hanson_wright_bound: p must be >= 1");
    double fro2 = 0.0;
    for (double v : A.a) fro2 += v * v;
    return std::sqrt(p) * std::sqrt(fro2) + p * operator_norm(A);
}

double rademacher_linform_norm_exact(const std::vector<double>& a, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("linform norm: q must be >= 1");
    const std::uint64_t L = a.size();
    if (L == 0) return 0.0;
    if (L > kEnumCap) throw std::invalid_argument("linform norm: length exceeds enumeration cap");
    // Gray-code walk over the sign cube
    std::vector<int> sigma(L, 1);
    double v = 0.0;
    for (double ai : a) v += ai;
    const std::uint64_t total = std::uint64_t(1) << L;
    double acc = q_power(v, q);
    for (std::uint64_t k = 1; k < total; ++k) {
        const unsigned b = __builtin_ctzll(k);
        v -= 2.0 * sigma[b] * a[b];
        sigma[b] = -sigma[b];
        acc += q_power(v, q);
    }
    return std::pow(acc / static_cast<double>(total), 1.0 / q);
}

double chaos_norm_exact(const QuadForm& A, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("chaos norm: q must be >= 1");
    const std::uint64_t n = A.n;
    if (n == 0) return 0.0;
    if (n > kEnumCap) throw std::invalid_argument("chaos norm: n exceeds enumeration cap");
    // maintain row sums r_i = sum_j a_ij sigma_j; flipping sigma_b moves the
    // form value by -4 sigma_b r_b (zero diagonal) and each r_i by -2 sigma_b a_ib
    std::vector<int> sigma(n, 1);
    std::vector<double> r(n, 0.0);
    double val = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        for (std::uint64_t j = 0; j < n; ++j) r[i] += A.at(i, j);
        val += r[i];
    }
    const std::uint64_t total = std::uint64_t(1) << n;
    double acc = q_power(val, q);
    for (std::uint64_t k = 1; k < total; ++k) {
        const unsigned b = __builtin_ctzll(k);
        val -= 4.0 * sigma[b] * r[b];
        for (std::uint64_t i = 0; i < n; ++i) r[i] -= 2.0 * sigma[b] * A.at(i, b);
        sigma[b] = -sigma[b];
        acc += q_power(val, q);
    }
    return std::pow(acc / static_cast<double>(total), 1.0 / q);
}

QuadFormBound quadform_bound(const QuadForm& A, int q, InnerNorm mode) {
    if (q < 1) throw std::invalid_argument("quadform_bound: q must be >= 1");
    const std::uint64_t n = A.n;
    const std::uint64_t head_dim = std::min<std::uint64_t>(q, n);

    QuadFormBound out;
    const std::uint64_t tail_len = n > head_dim ? n - head_dim : 0;
    out.mode_used = mode;
    if (mode == InnerNorm::exact_enumeration && tail_len > kExactTailLimit) {
        out.mode_used = InnerNorm::hitczenko;
        out.forced_fallback = true;
    }

    for (std::uint64_t i = 0; i < head_dim; ++i)
        for (std::uint64_t j = 0; j < head_dim; ++j) out.head += std::abs(A.at(i, j));

    double agg = 0.0;
    std::vector<double> row_tail(tail_len);
    for (std::uint64_t i = 0; i < n; ++i) {
        for (std::uint64_t j = 0; j < tail_len; ++j) row_tail[j] = A.at(i, head_dim + j);
        const double norm = out.mode_used == InnerNorm::exact_enumeration
                                ? rademacher_linform_norm_exact(row_tail, q)
                                : hitczenko_bound(row_tail, q);
        agg += norm * norm;
    }
    out.tail = std::sqrt(static_cast<double>(q)) * std::sqrt(agg);
    out.value = out.head + out.tail;
    return out;
}

LatalaThreshold latala_symmetric_T(const std::function<double(std::size_t, double)>& moment_evaluator,
                                   std::size_t n, double q, double rel_tol) {
    if (n < 1) throw std::invalid_argument("latala_symmetric_T: need at least one summand");
    if (!(q >= 2.0)) throw std::invalid_argument("latala_symmetric_T: q must be >= 2");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("latala_symmetric_T: rel_tol must be positive");

    LatalaThreshold out;
    out.q = q;

    auto condition = [&](double T) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double phi = moment_evaluator(i, T);
            if (!(phi > 0.0)) throw std::invalid_argument("latala_symmetric_T: evaluator must be positive");
            acc += std::log(phi);
            ++out.evaluations;
            if (acc > 1e300) break;  // already far above q
        }
        return acc;
    };

    constexpr double kFloor = 1e-30;
    double hi = 1.0;
    double lo = 1.0;
    if (condition(1.0) <= q) {
        // shrink the feasible endpoint down
        while (lo > kFloor && condition(lo * 0.5) <= q) lo *= 0.5;
        if (lo <= kFloor) {
            out.T = kFloor;
            out.residual = condition(kFloor);
            out.degenerate = true;
            return out;
        }
        hi = lo;
        lo *= 0.5;
    } else {
        // grow until feasible
        std::uint64_t doublings = 0;
        while (condition(hi) > q) {
            hi *= 2.0;
            if (++doublings > 2000) throw std::runtime_error("latala_symmetric_T: bracket failure");
        }
        lo = hi * 0.5;
    }
    // invariant: condition(lo) > q >= condition(hi)
    while ((hi - lo) > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (condition(mid) <= q) hi = mid;
        else lo = mid;
    }
    out.T = hi;
    out.residual = condition(hi);
    return out;
}

NonnegBound latala_nonneg_bound(const std::function<double(double)>& norm_evaluator,
                                std::uint64_t n, double q, std::size_t grid_points,
                                const std::vector<double>& candidates) {
    if (n < 1) throw std::invalid_argument("latala_nonneg_bound: n must be >= 1");
    if (!(q >= 1.0) || q > static_cast<double>(n))
        throw std::invalid_argument("latala_nonneg_bound: need 1 <= q <= n");
    grid_points = std::max<std::size_t>(grid_points, 2);

    std::vector<double> ts;
    ts.reserve(grid_points + candidates.size());
    if (q == 1.0) {
        ts.push_back(1.0);
    } else {
        const double lq = std::log(q);
        for (std::size_t k = 0; k < grid_points; ++k)
            ts.push_back(std::exp(lq * static_cast<double>(k) / static_cast<double>(grid_points - 1)));
    }
    for (double c : candidates)
        if (c >= 1.0 && c <= q) ts.push_back(c);

    NonnegBound out;
    const double nq = static_cast<double>(n) / q;
    for (double t : ts) {
        const double v = (q / t) * std::pow(nq, 1.0 / t) * norm_evaluator(t);
        if (v > out.value) {
            out.value = v;
            out.t_at_max = t;
        }
    }
    return out;
}

ManyBinBound manybin_bound(const BinomialSpec& spec, double q) {
    if (spec.N < 1) throw std::invalid_argument("manybin_bound: N must be >= 1");
    if (!(spec.alpha > 0.0 && spec.alpha <= 1.0))
        throw std::invalid_argument("manybin_bound: alpha must be in (0, 1]");
    if (!(q >= 1.0)) throw std::invalid_argument("manybin_bound: q must be >= 1");
    ManyBinBound out;
    out.B = q / (spec.alpha * std::max<double>(static_cast<double>(spec.N), q));
    if (out.B >= kE) {
        out.log_branch = true;
        out.value = q / std::log(out.B);
    } else {
        out.value = q / out.B;
    }
    return out;
}

}  // namespace scjl
