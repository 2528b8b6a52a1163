#include "scjl/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "scjl/rng.hpp"
#include "scjl/version.hpp"

namespace scjl {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kWilsonZ = 1.959963984540054;  // 97.5% normal quantile

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(v));
    return buf;
}

std::string family_list(const std::vector<FamilyKind>& families) {
    std::string out;
    for (std::size_t i = 0; i < families.size(); ++i) {
        if (i) out += ",";
        out += family_name(families[i]);
    }
    return out;
}

void normalize_unit(std::vector<double>& x) {
    double s2 = 0.0;
    for (double v : x) s2 += v * v;
    const double norm = std::sqrt(s2);
    if (!(norm > 0.0)) throw std::invalid_argument("vector has zero norm");
    for (double& v : x) v /= norm;
}

// Vectors a family contributes to an experiment, file kind included.
std::vector<std::vector<double>> family_vectors(FamilyKind kind, std::uint64_t n,
                                                std::uint64_t count, std::uint64_t seed,
                                                const std::string& dataset_path) {
    if (kind == FamilyKind::file) {
        if (dataset_path.empty())
            throw std::invalid_argument("family 'file' requires a dataset path");
        auto vectors = ingest_vectors(dataset_path);
        for (const auto& x : vectors)
            if (x.size() != n)
                throw std::invalid_argument("dataset dimension " + std::to_string(x.size()) +
                                            " does not match n=" + std::to_string(n));
        return vectors;
    }
    return make_family(kind, n, count, seed);
}

struct RateAccumulator {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
};

// Spread `trials` matrices across the family vectors and count failures.
RateAccumulator accumulate_rate(const SketchParams& params,
                                const std::vector<std::vector<double>>& vectors, double eps,
                                std::uint64_t trials, std::uint64_t seed) {
    RateAccumulator acc;
    const std::uint64_t k = vectors.size();
    for (std::uint64_t i = 0; i < k; ++i) {
        const std::uint64_t share = trials / k + (i < trials % k ? 1 : 0);
        if (share == 0) continue;
        const FailureRate fr = mc_failure_rate(params, vectors[i], eps, share, derive_seed(seed, i));
        acc.trials += fr.trials;
        acc.failures += fr.failures;
    }
    return acc;
}

struct RatioTracker {
    std::uint64_t instances = 0;
    double min_ratio = 0.0;
    double max_ratio = 0.0;

    void add(double exact, double bound) {
        const double r = exact / bound;
        if (instances == 0) {
            min_ratio = max_ratio = r;
        } else {
            min_ratio = std::min(min_ratio, r);
            max_ratio = std::max(max_ratio, r);
        }
        ++instances;
    }
};

EvaluatorRow finish_row(const std::string& name, const RatioTracker& t, double limit_low,
                        double limit_high, const std::string& mode) {
    if (t.instances == 0)
        throw std::invalid_argument("bounds report: evaluator '" + name + "' has an empty grid");
    EvaluatorRow row;
    row.evaluator = name;
    row.instances = t.instances;
    row.min_ratio = t.min_ratio;
    row.max_ratio = t.max_ratio;
    row.limit_low = limit_low;
    row.limit_high = limit_high;
    row.mode = mode;
    row.pass = t.min_ratio >= limit_low && t.max_ratio <= limit_high;
    return row;
}

}  // namespace

FamilyKind family_from_name(const std::string& name) {
    if (name == "basis") return FamilyKind::basis;
    if (name == "uniform") return FamilyKind::uniform;
    if (name == "two_spike") return FamilyKind::two_spike;
    if (name == "random_unit") return FamilyKind::random_unit;
    if (name == "file") return FamilyKind::file;
    throw std::invalid_argument("unknown vector family '" + name + "'");
}

std::string family_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::basis: return "basis";
        case FamilyKind::uniform: return "uniform";
        case FamilyKind::two_spike: return "two_spike";
        case FamilyKind::random_unit: return "random_unit";
        case FamilyKind::file: return "file";
    }
    throw std::invalid_argument("unknown vector family");
}

std::vector<std::vector<double>> make_family(FamilyKind kind, std::uint64_t n,
                                             std::uint64_t count, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("make_family: n must be >= 1");
    std::vector<std::vector<double>> out;
    switch (kind) {
        case FamilyKind::basis: {
            const std::uint64_t k = std::min<std::uint64_t>(n, count == 0 ? 16 : count);
            for (std::uint64_t i = 0; i < k; ++i) {
                std::vector<double> x(n, 0.0);
                x[i] = 1.0;
                out.push_back(std::move(x));
            }
            break;
        }
        case FamilyKind::uniform: {
            out.emplace_back(n, 1.0 / std::sqrt(static_cast<double>(n)));
            break;
        }
        case FamilyKind::two_spike: {
            out.push_back(two_spike_vector(n));
            break;
        }
        case FamilyKind::random_unit: {
            const std::uint64_t k = count == 0 ? 16 : count;
            for (std::uint64_t i = 0; i < k; ++i) {
                Xoshiro256 rng(derive_seed(seed, i));
                std::vector<double> x(n);
                double s2 = 0.0;
                do {
                    s2 = 0.0;
                    for (std::uint64_t j = 0; j < n; ++j) {
                        x[j] = rng.next_gaussian();
                        s2 += x[j] * x[j];
                    }
                } while (!(s2 > 0.0));
                normalize_unit(x);
                out.push_back(std::move(x));
            }
            break;
        }
        case FamilyKind::file:
            throw std::invalid_argument("make_family: the file family comes from ingest_vectors");
    }
    return out;
}

std::vector<std::vector<double>> ingest_vectors(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open dataset '" + path + "'");
    std::vector<std::vector<double>> out;
    std::string line;
    std::uint64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;

        std::vector<double> row;
        std::size_t pos = 0;
        while (true) {
            const std::size_t next = line.find(',', pos);
            const std::string cell = line.substr(pos, next == std::string::npos ? next : next - pos);
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
                    ++used;
                if (used != cell.size()) throw std::invalid_argument("trailing characters");
                row.push_back(v);
            } catch (const std::exception&) {
                throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                            ": cannot parse '" + cell + "' as a decimal");
            }
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        if (!out.empty() && row.size() != out.front().size())
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": row width differs from first row");
        double s2 = 0.0;
        for (double v : row) s2 += v * v;
        if (!(s2 > 0.0))
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": zero vector");
        normalize_unit(row);
        out.push_back(std::move(row));
    }
    if (out.empty()) throw std::invalid_argument("dataset '" + path + "' has no rows");
    return out;
}

WilsonInterval wilson_interval(std::uint64_t failures, std::uint64_t trials) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be >= 1");
    if (failures > trials) throw std::invalid_argument("wilson_interval: failures > trials");
    const double nn = static_cast<double>(trials);
    const double ph = static_cast<double>(failures) / nn;
    const double z2 = kWilsonZ * kWilsonZ;
    const double denom = 1.0 + z2 / nn;
    const double center = (ph + z2 / (2.0 * nn)) / denom;
    const double half = kWilsonZ * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn)) / denom;
    WilsonInterval w;
    // The interval always contains the point estimate in exact arithmetic;
    // clamping keeps that true when sqrt rounding nudges an endpoint past it.
    w.low = std::min(std::max(0.0, center - half), ph);
    w.high = std::max(std::min(1.0, center + half), ph);
    return w;
}

DistortionReport run_distortion(const DistortionConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("run_distortion: trials must be >= 1");
    if (config.families.empty()) throw std::invalid_argument("run_distortion: no families selected");

    DistortionReport report;
    report.config = config;
    report.params = select_params(config.eps, config.delta, config.B, config.c_s, config.c_m);
    report.params.n = config.n;
    report.params.validate_for_sampling();

    for (std::size_t f = 0; f < config.families.size(); ++f) {
        const FamilyKind kind = config.families[f];
        const std::uint64_t family_seed = derive_seed(config.seed, 1000 + f);
        const auto vectors = family_vectors(kind, config.n, config.count,
                                            derive_seed(family_seed, 1), config.dataset_path);
        const RateAccumulator acc = accumulate_rate(report.params, vectors, config.eps,
                                                    config.trials, derive_seed(family_seed, 2));
        FamilyResult row;
        row.kind = kind;
        row.vectors = vectors.size();
        row.trials = acc.trials;
        row.failures = acc.failures;
        row.rate = static_cast<double>(acc.failures) / static_cast<double>(acc.trials);
        const WilsonInterval w = wilson_interval(acc.failures, acc.trials);
        row.ci_low = w.low;
        row.ci_high = w.high;
        row.pass = row.ci_low <= config.delta;
        report.all_pass = report.all_pass && row.pass;
        report.rows.push_back(std::move(row));
    }
    return report;
}

TradeoffReport run_tradeoff(const TradeoffConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("run_tradeoff: trials must be >= 1");

    TradeoffReport report;
    report.config = config;

    std::vector<double> grid = config.B_grid;
    if (grid.empty()) {
        if (config.grid_points < 2)
            throw std::invalid_argument("run_tradeoff: need at least 2 grid points");
        const double hi = 1.0 / config.delta;
        if (!(config.delta > 0.0 && config.delta < 1.0) || hi < kMinB)
            throw std::invalid_argument(
                "run_tradeoff: delta must be <= 1/e so the B range [e, 1/delta] is nonempty");
        const double llo = std::log(kMinB), lhi = std::log(hi);
        for (std::uint64_t k = 0; k < config.grid_points; ++k) {
            const double t = llo + (lhi - llo) * static_cast<double>(k) /
                                       static_cast<double>(config.grid_points - 1);
            grid.push_back(std::exp(t));
        }
        grid.front() = kMinB;
        grid.back() = hi;
    }

    for (std::size_t k = 0; k < grid.size(); ++k) {
        TradeoffRow row;
        row.B_request = grid[k];
        row.params = select_params(config.eps, config.delta, grid[k], config.c_s, config.c_m);
        row.params.n = config.n;
        row.params.validate_for_sampling();

        const std::uint64_t row_seed = derive_seed(config.seed, 2000 + k);
        const auto vectors = family_vectors(config.family, config.n, config.count,
                                            derive_seed(row_seed, 1), config.dataset_path);
        const RateAccumulator acc = accumulate_rate(row.params, vectors, config.eps,
                                                    config.trials, derive_seed(row_seed, 2));
        row.trials = acc.trials;
        row.failures = acc.failures;
        row.rate = static_cast<double>(acc.failures) / static_cast<double>(acc.trials);
        const WilsonInterval w = wilson_interval(acc.failures, acc.trials);
        row.ci_low = w.low;
        row.ci_high = w.high;
        row.pass = row.ci_low <= config.delta;
        report.all_pass = report.all_pass && row.pass;
        report.rows.push_back(std::move(row));
    }
    return report;
}

BoundsReport run_bounds_report(const BoundsReportConfig& config) {
    if (config.matrices_per_size < 1 || config.chaos_sizes.empty() || config.chaos_orders.empty() ||
        config.linform_sizes.empty() || config.linform_orders.empty() ||
        config.binom_alphas.empty() || config.binom_sizes.empty() || config.binom_orders.empty())
        throw std::invalid_argument("run_bounds_report: empty grid axis");

    BoundsReport report;
    report.config = config;

    // price the exact enumerations up front against the configured budget
    double required = 0.0;
    for (const std::uint64_t n : config.linform_sizes)
        for (const int p : config.linform_orders)
            if (static_cast<std::uint64_t>(p) <= n) required += 3.0 * std::ldexp(1.0, static_cast<int>(n));
    for (const std::uint64_t n : config.chaos_sizes)
        for (const int q : config.chaos_orders)
            if (static_cast<std::uint64_t>(q) <= n) {
                const double trials = static_cast<double>(config.matrices_per_size);
                const double cube = std::ldexp(1.0, static_cast<int>(n));
                const std::uint64_t tail = n > static_cast<std::uint64_t>(q)
                                               ? n - static_cast<std::uint64_t>(q)
                                               : 0;
                // chaos enumeration plus the per-row tail enumerations inside quadform
                required += trials * (cube + static_cast<double>(n) *
                                                 std::ldexp(1.0, static_cast<int>(tail)));
            }
    if (required > config.enum_budget) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "run_bounds_report: enumeration requires %.0f evaluations, budget is %.0f",
                      required, config.enum_budget);
        throw BudgetError(buf, required, config.enum_budget);
    }

    RatioTracker hitczenko, khintchine, hanson_wright, quadform, latala_nonneg, manybin;
    bool quadform_any_exact = false, quadform_any_fallback = false;

    // linear forms: e1, uniform and geometric-decay vectors, exact by enumeration
    for (const std::uint64_t n : config.linform_sizes) {
        std::vector<std::vector<double>> xs;
        std::vector<double> e1(n, 0.0);
        e1[0] = 1.0;
        xs.push_back(std::move(e1));
        xs.emplace_back(n, 1.0 / std::sqrt(static_cast<double>(n)));
        std::vector<double> geo(n);
        for (std::uint64_t i = 0; i < n; ++i) geo[i] = std::ldexp(1.0, -static_cast<int>(i));
        normalize_unit(geo);
        xs.push_back(std::move(geo));

        for (const auto& x : xs) {
            for (const int p : config.linform_orders) {
                if (static_cast<std::uint64_t>(p) > n) continue;
                const double exact = rademacher_linform_norm_exact(x, p);
                hitczenko.add(exact, hitczenko_bound(x, p));
                khintchine.add(exact, khintchine_bound(x, p));
            }
        }
    }

    // quadratic forms: seeded gaussian symmetric zero-diagonal matrices
    std::uint64_t matrix_index = 0;
    for (const std::uint64_t n : config.chaos_sizes) {
        for (std::uint64_t rep = 0; rep < config.matrices_per_size; ++rep, ++matrix_index) {
            Xoshiro256 rng(derive_seed(config.seed, 7000 + matrix_index));
            std::vector<double> entries(n * n, 0.0);
            for (std::uint64_t i = 0; i < n; ++i)
                for (std::uint64_t j = i + 1; j < n; ++j)
                    entries[i * n + j] = entries[j * n + i] = rng.next_gaussian();
            const QuadForm A = QuadForm::from_dense(n, entries);

            for (const int q : config.chaos_orders) {
                if (static_cast<std::uint64_t>(q) > n) continue;
                const double exact = chaos_norm_exact(A, q);
                hanson_wright.add(exact, hanson_wright_bound(A, q));
                const QuadFormBound qb = quadform_bound(A, q);
                quadform.add(exact, qb.value);
                if (qb.mode_used == InnerNorm::exact_enumeration) quadform_any_exact = true;
                else quadform_any_fallback = true;
            }
        }
    }

    // binomial norms: exact pmf sums against the closed-form bounds
    for (const int q : config.binom_orders) {
        for (const std::uint64_t N : config.binom_sizes) {
            for (const double alpha : config.binom_alphas) {
                BinomialSpec spec;
                spec.N = N;
                spec.alpha = alpha;
                const double exact = binomial_moment_exact(spec, q);
                manybin.add(exact, manybin_bound(spec, q).value);
                if (N >= static_cast<std::uint64_t>(q)) {
                    const auto norm_eval = [&spec](double t) {
                        return binomial_moment_exact(spec, t);
                    };
                    const double stationary = std::log(q / (alpha * static_cast<double>(N)));
                    const NonnegBound nb =
                        latala_nonneg_bound(norm_eval, N, q, 200, {stationary});
                    latala_nonneg.add(exact, nb.value);
                }
            }
        }
    }

    std::string quad_mode = "exact_enumeration";
    if (quadform_any_fallback) quad_mode = quadform_any_exact ? "mixed" : "hitczenko";

    report.rows.push_back(finish_row("hitczenko", hitczenko, kFrozenHitczenkoLow,
                                     kFrozenHitczenkoHigh, "-"));
    report.rows.push_back(finish_row("khintchine", khintchine, 0.0, kFrozenKhintchineC, "-"));
    report.rows.push_back(finish_row("hanson_wright", hanson_wright, 0.0,
                                     kFrozenHansonWrightC, "-"));
    report.rows.push_back(finish_row("quadform", quadform, 0.0, kFrozenQuadFormC, quad_mode));
    report.rows.push_back(finish_row("latala_nonneg", latala_nonneg, 0.0,
                                     kFrozenLatalaNonnegC, "-"));
    report.rows.push_back(finish_row("manybin", manybin, 0.0, kFrozenManyBinC, "-"));

    for (const auto& row : report.rows) report.all_pass = report.all_pass && row.pass;
    return report;
}

std::string params_csv(const SketchParams& params) {
    std::string out;
    out += "# artifact=scjl-params-v1\n";
    out += std::string("# version=") + kVersion + "\n";
    out += "eps,delta,c_s,c_m,s,m,B\n";
    out += fmt(params.eps) + "," + fmt(params.delta) + "," + fmt(params.c_s) + "," +
           fmt(params.c_m) + "," + fmt(params.s) + "," + fmt(params.m) + "," + fmt(params.B) +
           "\n";
    return out;
}

std::string params_json(const SketchParams& params) {
    ordered_json j;
    j["artifact"] = "scjl-params-v1";
    j["version"] = kVersion;
    j["params"] = {{"eps", params.eps}, {"delta", params.delta}, {"c_s", params.c_s},
                   {"c_m", params.c_m}, {"s", params.s},         {"m", params.m},
                   {"B", params.B}};
    return j.dump(2) + "\n";
}

namespace {

ordered_json params_fragment(const SketchParams& params) {
    return {{"s", params.s}, {"m", params.m}, {"B", params.B}};
}

}  // namespace

std::string distortion_csv(const DistortionReport& report) {
    const DistortionConfig& c = report.config;
    std::string out;
    out += "# artifact=scjl-distortion-v1\n";
    out += std::string("# version=") + kVersion + "\n";
    out += "# seed=" + fmt(c.seed) + "\n";
    out += "# eps=" + fmt(c.eps) + " delta=" + fmt(c.delta) + " B=" + fmt(report.params.B) +
           " c_s=" + fmt(c.c_s) + " c_m=" + fmt(c.c_m) + " s=" + fmt(report.params.s) +
           " m=" + fmt(report.params.m) + " n=" + fmt(c.n) + " trials=" + fmt(c.trials) +
           " count=" + fmt(c.count) + " families=" + family_list(c.families) + "\n";
    out += "family,vectors,trials,failures,rate,ci_low,ci_high,pass\n";
    for (const auto& row : report.rows) {
        out += family_name(row.kind) + "," + fmt(row.vectors) + "," + fmt(row.trials) + "," +
               fmt(row.failures) + "," + fmt(row.rate) + "," + fmt(row.ci_low) + "," +
               fmt(row.ci_high) + "," + (row.pass ? "1" : "0") + "\n";
    }
    return out;
}

std::string distortion_json(const DistortionReport& report) {
    const DistortionConfig& c = report.config;
    ordered_json j;
    j["artifact"] = "scjl-distortion-v1";
    j["version"] = kVersion;
    j["config"] = {{"eps", c.eps},       {"delta", c.delta},
                   {"B", c.B},           {"c_s", c.c_s},
                   {"c_m", c.c_m},       {"n", c.n},
                   {"trials", c.trials}, {"seed", c.seed},
                   {"count", c.count},   {"families", ordered_json::array()},
                   {"dataset", c.dataset_path}};
    for (const auto f : c.families) j["config"]["families"].push_back(family_name(f));
    j["params"] = params_fragment(report.params);
    j["rows"] = ordered_json::array();
    for (const auto& row : report.rows) {
        j["rows"].push_back({{"family", family_name(row.kind)},
                             {"vectors", row.vectors},
                             {"trials", row.trials},
                             {"failures", row.failures},
                             {"rate", row.rate},
                             {"ci_low", row.ci_low},
                             {"ci_high", row.ci_high},
                             {"pass", row.pass}});
    }
    j["all_pass"] = report.all_pass;
    return j.dump(2) + "\n";
}

std::string tradeoff_csv(const TradeoffReport& report) {
    const TradeoffConfig& c = report.config;
    std::string out;
    out += "# artifact=scjl-tradeoff-v1\n";
    out += std::string("# version=") + kVersion + "\n";
    out += "# seed=" + fmt(c.seed) + "\n";
    out += "# eps=" + fmt(c.eps) + " delta=" + fmt(c.delta) + " c_s=" + fmt(c.c_s) +
           " c_m=" + fmt(c.c_m) + " n=" + fmt(c.n) + " trials=" + fmt(c.trials) +
           " family=" + family_name(c.family) + " count=" + fmt(c.count) + "\n";
    out += "B_request,s,m,B,trials,failures,rate,ci_low,ci_high,pass\n";
    for (const auto& row : report.rows) {
        out += fmt(row.B_request) + "," + fmt(row.params.s) + "," + fmt(row.params.m) + "," +
               fmt(row.params.B) + "," + fmt(row.trials) + "," + fmt(row.failures) + "," +
               fmt(row.rate) + "," + fmt(row.ci_low) + "," + fmt(row.ci_high) + "," +
               (row.pass ? "1" : "0") + "\n";
    }
    return out;
}

std::string tradeoff_json(const TradeoffReport& report) {
    const TradeoffConfig& c = report.config;
    ordered_json j;
    j["artifact"] = "scjl-tradeoff-v1";
    j["version"] = kVersion;
    j["config"] = {{"eps", c.eps},
                   {"delta", c.delta},
                   {"c_s", c.c_s},
                   {"c_m", c.c_m},
                   {"n", c.n},
                   {"trials", c.trials},
                   {"seed", c.seed},
                   {"grid_points", c.grid_points},
                   {"family", family_name(c.family)},
                   {"count", c.count},
                   {"dataset", c.dataset_path}};
    j["rows"] = ordered_json::array();
    for (const auto& row : report.rows) {
        j["rows"].push_back({{"B_request", row.B_request},
                             {"s", row.params.s},
                             {"m", row.params.m},
                             {"B", row.params.B},
                             {"trials", row.trials},
                             {"failures", row.failures},
                             {"rate", row.rate},
                             {"ci_low", row.ci_low},
                             {"ci_high", row.ci_high},
                             {"pass", row.pass}});
    }
    j["all_pass"] = report.all_pass;
    return j.dump(2) + "\n";
}

std::string bounds_report_csv(const BoundsReport& report) {
    const BoundsReportConfig& c = report.config;
    std::string out;
    out += "# artifact=scjl-bounds-report-v1\n";
    out += std::string("# version=") + kVersion + "\n";
    out += "# seed=" + fmt(c.seed) + "\n";
    out += "# matrices_per_size=" + fmt(c.matrices_per_size) +
           " enum_budget=" + fmt(c.enum_budget) + "\n";
    out += "evaluator,instances,min_ratio,max_ratio,limit_low,limit_high,mode,pass\n";
    for (const auto& row : report.rows) {
        out += row.evaluator + "," + fmt(row.instances) + "," + fmt(row.min_ratio) + "," +
               fmt(row.max_ratio) + "," + fmt(row.limit_low) + "," + fmt(row.limit_high) + "," +
               row.mode + "," + (row.pass ? "1" : "0") + "\n";
    }
    return out;
}

std::string bounds_report_json(const BoundsReport& report) {
    const BoundsReportConfig& c = report.config;
    ordered_json j;
    j["artifact"] = "scjl-bounds-report-v1";
    j["version"] = kVersion;
    j["config"] = {{"seed", c.seed},
                   {"enum_budget", c.enum_budget},
                   {"matrices_per_size", c.matrices_per_size},
                   {"chaos_sizes", c.chaos_sizes},
                   {"chaos_orders", c.chaos_orders},
                   {"linform_sizes", c.linform_sizes},
                   {"linform_orders", c.linform_orders},
                   {"binom_alphas", c.binom_alphas},
                   {"binom_sizes", c.binom_sizes},
                   {"binom_orders", c.binom_orders}};
    j["rows"] = ordered_json::array();
    for (const auto& row : report.rows) {
        j["rows"].push_back({{"evaluator", row.evaluator},
                             {"instances", row.instances},
                             {"min_ratio", row.min_ratio},
                             {"max_ratio", row.max_ratio},
                             {"limit_low", row.limit_low},
                             {"limit_high", row.limit_high},
                             {"mode", row.mode},
                             {"pass", row.pass}});
    }
    j["all_pass"] = report.all_pass;
    return j.dump(2) + "\n";
}

std::string counterexample_csv(const CounterexampleReport& report) {
    std::string out;
    out += "# artifact=scjl-counterexample-v1\n";
    out += std::string("# version=") + kVersion + "\n";
    out += "# seed=" + fmt(report.seed) + "\n";
    out += "# eps=" + fmt(report.eps) + " delta=" + fmt(report.delta) +
           " trials=" + fmt(report.trials) + " c_s=" + fmt(report.c_s) +
           " c_m=" + fmt(report.c_m) + " n=" + fmt(report.n) + "\n";
    out += "p,s,m,B,u_p,u_p_stderr,keyfail,z_norm,hw_implied_m,paper_m,looseness\n";
    for (const auto& row : report.rows) {
        out += fmt(static_cast<std::uint64_t>(row.p)) + "," + fmt(row.s) + "," + fmt(row.m) +
               "," + fmt(row.B) + "," + fmt(row.u_p.value) + "," + fmt(row.u_p.stderr_value) +
               "," + fmt(row.keyfail_value) + "," + fmt(row.z_norm) + "," +
               fmt(row.dims.hw_m) + "," + fmt(row.dims.paper_m) + "," + fmt(row.looseness) +
               "\n";
    }
    return out;
}

std::string counterexample_json(const CounterexampleReport& report) {
    ordered_json j;
    j["artifact"] = "scjl-counterexample-v1";
    j["version"] = kVersion;
    j["config"] = {{"eps", report.eps},       {"delta", report.delta},
                   {"trials", report.trials}, {"seed", report.seed},
                   {"c_s", report.c_s},       {"c_m", report.c_m},
                   {"n", report.n}};
    j["rows"] = ordered_json::array();
    for (const auto& row : report.rows) {
        j["rows"].push_back({{"p", row.p},
                             {"s", row.s},
                             {"m", row.m},
                             {"B", row.B},
                             {"u_p", row.u_p.value},
                             {"u_p_stderr", row.u_p.stderr_value},
                             {"keyfail", row.keyfail_value},
                             {"z_norm", row.z_norm},
                             {"binom_norm", row.binom_norm},
                             {"looseness", row.looseness},
                             {"delta_row", row.delta_row},
                             {"hw_s", row.dims.hw_s},
                             {"hw_implied_m", row.dims.hw_m},
                             {"paper_s", row.dims.paper_s},
                             {"paper_m", row.dims.paper_m},
                             {"dimension_ratio", row.dims.ratio},
                             {"max_identity_gap", row.max_identity_gap}});
    }
    return j.dump(2) + "\n";
}

}  // namespace scjl
