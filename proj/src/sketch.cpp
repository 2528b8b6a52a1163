#include "scjl/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>
#include <omp.h>

#include "scjl/rng.hpp"

namespace scjl {

namespace {

void check_selection_args(double eps, double delta, double B, double c_s, double c_m) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("select_params: eps must be in (0,1)");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("select_params: delta must be in (0,1)");
    // B * delta compares against 1 with a hair of slack so that B = 1/delta
    // stays legal when neither side is exactly representable.
    if (!(B >= kMinB) || B * delta > 1.0 + 1e-9)
        throw std::invalid_argument("select_params: B must lie in [e, 1/delta]");
    if (!(c_s > 0.0) || !(c_m > 0.0)) throw std::invalid_argument("select_params: constants must be positive");
}

}  // namespace

void SketchParams::validate_for_sampling() const {
    if (n < 1) throw std::invalid_argument("SketchParams: n must be >= 1 before sampling");
    if (s < 1) throw std::invalid_argument("SketchParams: s must be >= 1");
    if (m < s) throw std::invalid_argument("SketchParams: m must be >= s");
}

SketchParams select_params(double eps, double delta, double B, double c_s, double c_m) {
    check_selection_args(eps, delta, B, c_s, c_m);
    SketchParams p;
    p.eps = eps;
    p.delta = delta;
    p.c_s = c_s;
    p.c_m = c_m;
    const double s_real = c_s * (1.0 / eps) * std::log(1.0 / delta) / std::log(B);
    p.s = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(s_real)));
    const double m_real = c_m * B * static_cast<double>(p.s) * static_cast<double>(p.s);
    p.m = std::max<std::uint64_t>(p.s, static_cast<std::uint64_t>(std::ceil(m_real)));
    p.B = static_cast<double>(p.m) / (static_cast<double>(p.s) * static_cast<double>(p.s));
    return p;
}

double SignConsistentMatrix::scale() const { return 1.0 / std::sqrt(static_cast<double>(s)); }
double SparseJLMatrix::scale() const { return 1.0 / std::sqrt(static_cast<double>(s)); }

namespace {

// Shared column-sampling core.  The support is drawn first (s stream draws),
// sorted, then the sign draw(s) follow, so the stream layout is fixed.
template <class Column, class SignFill>
void fill_columns(std::vector<Column>& cols, std::uint64_t n, std::uint64_t m, std::uint64_t s,
                  std::uint64_t seed, Exec exec, SignFill&& fill_signs) {
    cols.resize(n);
    if (exec == Exec::parallel) {
#pragma omp parallel
        {
            SubsetSampler ws;
#pragma omp for schedule(static)
            for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
                Xoshiro256 rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
                ws.sample(m, s, rng, cols[i].rows);
                std::sort(cols[i].rows.begin(), cols[i].rows.end());
                fill_signs(cols[i], rng);
            }
        }
    } else {
        SubsetSampler ws;
        for (std::uint64_t i = 0; i < n; ++i) {
            Xoshiro256 rng(derive_seed(seed, i));
            ws.sample(m, s, rng, cols[i].rows);
            std::sort(cols[i].rows.begin(), cols[i].rows.end());
            fill_signs(cols[i], rng);
        }
    }
}

}  // namespace

SignConsistentMatrix sample_sign_consistent(const SketchParams& params, std::uint64_t seed, Exec exec) {
    params.validate_for_sampling();
    SignConsistentMatrix A;
    A.n = params.n;
    A.m = params.m;
    A.s = params.s;
    A.seed = seed;
    fill_columns(A.columns, A.n, A.m, A.s, seed, exec,
                 [](SignConsistentColumn& c, Xoshiro256& rng) { c.sign = rng.next_sign(); });
    return A;
}

SparseJLMatrix sample_sparse_jl(const SketchParams& params, std::uint64_t seed, Exec exec) {
    params.validate_for_sampling();
    SparseJLMatrix A;
    A.n = params.n;
    A.m = params.m;
    A.s = params.s;
    A.seed = seed;
    fill_columns(A.columns, A.n, A.m, A.s, seed, exec,
                 [](SparseJLColumn& c, Xoshiro256& rng) {
                     c.signs.resize(c.rows.size());
                     for (auto& sg : c.signs) sg = rng.next_sign();
                 });
    return A;
}

std::vector<double> apply(const SignConsistentMatrix& A, const std::vector<double>& x) {
    if (x.size() != A.n) throw std::invalid_argument("apply: x has wrong dimension");
    std::vector<double> y(A.m, 0.0);
    for (std::uint64_t i = 0; i < A.n; ++i) {
        if (x[i] == 0.0) continue;
        const double v = A.columns[i].sign * x[i];
        for (auto r : A.columns[i].rows) y[r] += v;
    }
    const double c = A.scale();
    for (auto& v : y) v *= c;
    return y;
}

std::vector<double> apply(const SparseJLMatrix& A, const std::vector<double>& x) {
    if (x.size() != A.n) throw std::invalid_argument("apply: x has wrong dimension");
    std::vector<double> y(A.m, 0.0);
    for (std::uint64_t i = 0; i < A.n; ++i) {
        if (x[i] == 0.0) continue;
        const auto& col = A.columns[i];
        for (std::size_t k = 0; k < col.rows.size(); ++k) y[col.rows[k]] += col.signs[k] * x[i];
    }
    const double c = A.scale();
    for (auto& v : y) v *= c;
    return y;
}

// ------------------------------------------------------------------ JSON

namespace {

using json = nlohmann::ordered_json;

json header_json(const char* kind, std::uint64_t n, std::uint64_t m, std::uint64_t s,
                 std::uint64_t seed) {
    json j;
    j["format"] = "scjl-matrix-v1";
    j["kind"] = kind;
    j["n"] = n;
    j["m"] = m;
    j["s"] = s;
    j["seed"] = seed;
    return j;
}

void check_header(const json& j, const char* kind) {
    if (!j.contains("format") || j["format"] != "scjl-matrix-v1")
        throw std::invalid_argument("matrix json: missing or unknown format tag");
    if (!j.contains("kind") || j["kind"] != kind)
        throw std::invalid_argument(std::string("matrix json: expected kind ") + kind);
}

std::vector<std::uint32_t> rows_from_json(const json& jc, std::uint64_t m, std::uint64_t s) {
    std::vector<std::uint32_t> rows = jc.at("rows").get<std::vector<std::uint32_t>>();
    if (rows.size() != s) throw std::invalid_argument("matrix json: column support size != s");
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k] >= m) throw std::invalid_argument("matrix json: row index out of range");
        if (k > 0 && rows[k] <= rows[k - 1])
            throw std::invalid_argument("matrix json: rows must be sorted and distinct");
    }
    return rows;
}

int check_sign(int v) {
    if (v != 1 && v != -1) throw std::invalid_argument("matrix json: sign must be 1 or -1");
    return v;
}

}  // namespace

std::string to_json(const SignConsistentMatrix& A) {
    json j = header_json("sign_consistent", A.n, A.m, A.s, A.seed);
    json cols = json::array();
    for (const auto& c : A.columns) {
        json jc;
        jc["rows"] = c.rows;
        jc["sign"] = c.sign;
        cols.push_back(std::move(jc));
    }
    j["columns"] = std::move(cols);
    return j.dump();
}

std::string to_json(const SparseJLMatrix& A) {
    json j = header_json("sparse_jl", A.n, A.m, A.s, A.seed);
    json cols = json::array();
    for (const auto& c : A.columns) {
        json jc;
        jc["rows"] = c.rows;
        jc["signs"] = c.signs;
        cols.push_back(std::move(jc));
    }
    j["columns"] = std::move(cols);
    return j.dump();
}

SignConsistentMatrix sign_consistent_from_json(const std::string& text) {
    const json j = json::parse(text);
    check_header(j, "sign_consistent");
    SignConsistentMatrix A;
    A.n = j.at("n").get<std::uint64_t>();
    A.m = j.at("m").get<std::uint64_t>();
    A.s = j.at("s").get<std::uint64_t>();
    A.seed = j.at("seed").get<std::uint64_t>();
    const auto& cols = j.at("columns");
    if (cols.size() != A.n) throw std::invalid_argument("matrix json: column count != n");
    A.columns.resize(A.n);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        A.columns[i].rows = rows_from_json(cols[i], A.m, A.s);
        A.columns[i].sign = check_sign(cols[i].at("sign").get<int>());
    }
    return A;
}

SparseJLMatrix sparse_jl_from_json(const std::string& text) {
    const json j = json::parse(text);
    check_header(j, "sparse_jl");
    SparseJLMatrix A;
    A.n = j.at("n").get<std::uint64_t>();
    A.m = j.at("m").get<std::uint64_t>();
    A.s = j.at("s").get<std::uint64_t>();
    A.seed = j.at("seed").get<std::uint64_t>();
    const auto& cols = j.at("columns");
    if (cols.size() != A.n) throw std::invalid_argument("matrix json: column count != n");
    A.columns.resize(A.n);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        A.columns[i].rows = rows_from_json(cols[i], A.m, A.s);
        A.columns[i].signs = cols[i].at("signs").get<std::vector<int>>();
        if (A.columns[i].signs.size() != A.s)
            throw std::invalid_argument("matrix json: signs size != s");
        for (int sg : A.columns[i].signs) check_sign(sg);
    }
    return A;
}

std::string matrix_kind_of_json(const std::string& text) {
    const json j = json::parse(text);
    if (!j.contains("format") || j["format"] != "scjl-matrix-v1")
        throw std::invalid_argument("matrix json: missing or unknown format tag");
    return j.at("kind").get<std::string>();
}

}  // namespace scjl
