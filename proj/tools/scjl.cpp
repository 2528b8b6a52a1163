// Command line front end: parameter selection, matrix sampling and
// persistence, sketch application, and the experiment reports.
//
// Exit codes: 0 success/pass, 1 usage or input error, 2 acceptance
// failure (a report row failed its criterion), 3 enumeration budget
// exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scjl/counterexample.hpp"
#include "scjl/experiment.hpp"
#include "scjl/oracle.hpp"
#include "scjl/sketch.hpp"
#include "scjl/version.hpp"

namespace {

using nlohmann::ordered_json;

struct ConstantsOpt {
    double c_s = 1.0;
    double c_m = 1.0;
};

ConstantsOpt parse_constants(const std::string& text) {
    ConstantsOpt c;
    if (text.empty()) return c;
    const std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("--constants expects 'c_s,c_m'");
    std::size_t used = 0;
    c.c_s = std::stod(text.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("--constants: bad c_s");
    const std::string rest = text.substr(comma + 1);
    c.c_m = std::stod(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("--constants: bad c_m");
    return c;
}

std::vector<scjl::FamilyKind> parse_families(const std::string& text) {
    std::vector<scjl::FamilyKind> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = text.find(',', pos);
        const std::string name =
            text.substr(pos, next == std::string::npos ? next : next - pos);
        out.push_back(scjl::family_from_name(name));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (out.empty()) throw std::invalid_argument("--families: empty list");
    return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t next = text.find(',', pos);
        const std::string cell =
            text.substr(pos, next == std::string::npos ? next : next - pos);
        std::size_t used = 0;
        out.push_back(std::stod(cell, &used));
        if (used != cell.size())
            throw std::invalid_argument(std::string(flag) + ": cannot parse '" + cell + "'");
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& bytes, const std::string& out_path) {
    if (out_path.empty()) {
        std::fwrite(bytes.data(), 1, bytes.size(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot open '" + out_path + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write to '" + out_path + "' failed");
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ----------------------------------------------------------------- apply

std::string apply_csv(const std::string& kind, std::uint64_t n, std::uint64_t m,
                      std::uint64_t s, std::uint64_t seed,
                      const std::vector<std::vector<double>>& rows) {
    std::string out;
    out += "# artifact=scjl-apply-v1\n";
    out += std::string("# version=") + scjl::kVersion + "\n";
    out += "# kind=" + kind + " n=" + std::to_string(n) + " m=" + std::to_string(m) +
           " s=" + std::to_string(s) + " seed=" + std::to_string(seed) + "\n";
    for (const auto& y : rows) {
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (i) out += ",";
            out += fmt17(y[i]);
        }
        out += "\n";
    }
    return out;
}

std::string apply_json(const std::string& kind, std::uint64_t n, std::uint64_t m,
                       std::uint64_t s, std::uint64_t seed,
                       const std::vector<std::vector<double>>& rows) {
    ordered_json j;
    j["artifact"] = "scjl-apply-v1";
    j["version"] = scjl::kVersion;
    j["matrix"] = {{"kind", kind}, {"n", n}, {"m", m}, {"s", s}, {"seed", seed}};
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sign-consistent sparse Johnson-Lindenstrauss sketching toolkit"};
    app.set_version_flag("--version", scjl::kVersion);
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "csv";
    std::string constants_text;

    auto add_common = [&](CLI::App* cmd, bool with_format = true) {
        cmd->add_option("--out", out_path, "write the artifact to this file (default stdout)");
        if (with_format)
            cmd->add_option("--format", format, "output format")
                ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--constants", constants_text, "selection constants as 'c_s,c_m'");
    };

    // params
    double eps = 0.5, delta = 0.05, B = scjl::kMinB;
    auto* cmd_params = app.add_subcommand("params", "resolve (s, m) from (eps, delta, B)");
    cmd_params->add_option("--eps", eps, "distortion bound, in (0,1)");
    cmd_params->add_option("--delta", delta, "failure probability, in (0,1)");
    cmd_params->add_option("--B", B, "tradeoff parameter, in [e, 1/delta]");
    add_common(cmd_params);

    // sample
    std::uint64_t n = 256, seed = 0, trials = 10000;
    std::string kind = "sign_consistent";
    auto* cmd_sample = app.add_subcommand("sample", "draw a sketch matrix and print its JSON");
    cmd_sample->add_option("--eps", eps, "distortion bound, in (0,1)");
    cmd_sample->add_option("--delta", delta, "failure probability, in (0,1)");
    cmd_sample->add_option("--B", B, "tradeoff parameter, in [e, 1/delta]");
    cmd_sample->add_option("--n", n, "data dimension");
    cmd_sample->add_option("--seed", seed, "64-bit sampling seed")->required();
    cmd_sample->add_option("--kind", kind, "matrix kind")
        ->check(CLI::IsMember({"sign_consistent", "sparse_jl"}));
    cmd_sample->add_option("--out", out_path, "write the matrix to this file (default stdout)");
    cmd_sample->add_option("--constants", constants_text, "selection constants as 'c_s,c_m'");

    // apply
    std::string matrix_path, vectors_path;
    auto* cmd_apply = app.add_subcommand("apply", "sketch a dataset with a stored matrix");
    cmd_apply->add_option("--matrix", matrix_path, "matrix JSON file")->required();
    cmd_apply->add_option("--vectors", vectors_path, "CSV of input vectors")->required();
    cmd_apply->add_option("--out", out_path, "write the artifact to this file (default stdout)");
    cmd_apply->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));

    // distortion
    std::string families_text = "basis,uniform,two_spike,random_unit";
    std::string dataset_path;
    std::uint64_t count = 0;
    auto* cmd_distortion =
        app.add_subcommand("distortion", "empirical failure rates per vector family");
    cmd_distortion->add_option("--eps", eps, "distortion bound, in (0,1)");
    cmd_distortion->add_option("--delta", delta, "failure probability, in (0,1)");
    cmd_distortion->add_option("--B", B, "tradeoff parameter, in [e, 1/delta]");
    cmd_distortion->add_option("--n", n, "data dimension");
    cmd_distortion->add_option("--trials", trials, "matrices per family");
    cmd_distortion->add_option("--seed", seed, "64-bit experiment seed")->required();
    cmd_distortion->add_option("--families", families_text, "comma list of vector families");
    cmd_distortion->add_option("--dataset", dataset_path, "CSV dataset for the file family");
    cmd_distortion->add_option("--count", count, "vectors per family (0 = family default)");
    add_common(cmd_distortion);

    // tradeoff
    std::string family_text = "two_spike";
    std::string b_grid_text;
    std::uint64_t grid_points = 5;
    auto* cmd_tradeoff = app.add_subcommand("tradeoff", "failure rate across a B sweep");
    cmd_tradeoff->add_option("--eps", eps, "distortion bound, in (0,1)");
    cmd_tradeoff->add_option("--delta", delta, "failure probability, in (0,1)");
    cmd_tradeoff->add_option("--n", n, "data dimension");
    cmd_tradeoff->add_option("--trials", trials, "matrices per grid point");
    cmd_tradeoff->add_option("--seed", seed, "64-bit experiment seed")->required();
    cmd_tradeoff->add_option("--grid-points", grid_points,
                             "log-spaced B grid size over [e, 1/delta]");
    cmd_tradeoff->add_option("--B-grid", b_grid_text, "explicit comma list of B values");
    cmd_tradeoff->add_option("--family", family_text, "vector family under test");
    cmd_tradeoff->add_option("--dataset", dataset_path, "CSV dataset for the file family");
    cmd_tradeoff->add_option("--count", count, "vectors for the family (0 = default)");
    add_common(cmd_tradeoff);

    // bounds-report
    double enum_budget = 1e9;
    std::uint64_t matrices_per_size = 3;
    auto* cmd_bounds = app.add_subcommand("bounds-report",
                                          "exact-vs-bound ratios on the calibration grids");
    cmd_bounds->add_option("--seed", seed, "64-bit seed for the random matrices")->required();
    cmd_bounds->add_option("--matrices-per-size", matrices_per_size,
                           "random matrices per dimension");
    cmd_bounds->add_option("--enum-budget", enum_budget,
                           "cap on total exact-enumeration evaluations");
    cmd_bounds->add_option("--out", out_path, "write the artifact to this file (default stdout)");
    cmd_bounds->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));

    // counterexample
    double ce_delta = 1e-7;
    auto* cmd_ce = app.add_subcommand(
        "counterexample", "two-spike looseness report for the generic quadratic-form bound");
    cmd_ce->add_option("--eps", eps, "distortion bound, in (0,1)");
    cmd_ce->add_option("--delta", ce_delta,
                       "tail probability; ln(1/delta) caps the p grid (default 1e-7)");
    cmd_ce->add_option("--trials", trials, "Monte Carlo trials per p");
    cmd_ce->add_option("--seed", seed, "64-bit experiment seed")->required();
    add_common(cmd_ce);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        const ConstantsOpt constants = parse_constants(constants_text);

        if (cmd_params->parsed()) {
            const scjl::SketchParams p = scjl::select_params(eps, delta, B, constants.c_s,
                                                             constants.c_m);
            emit(format == "json" ? scjl::params_json(p) : scjl::params_csv(p), out_path);
            return 0;
        }

        if (cmd_sample->parsed()) {
            scjl::SketchParams p = scjl::select_params(eps, delta, B, constants.c_s,
                                                       constants.c_m);
            p.n = n;
            const std::string text = kind == "sparse_jl"
                                         ? scjl::to_json(scjl::sample_sparse_jl(p, seed))
                                         : scjl::to_json(scjl::sample_sign_consistent(p, seed));
            emit(text, out_path);
            return 0;
        }

        if (cmd_apply->parsed()) {
            const std::string text = read_file(matrix_path);
            const std::string matrix_kind = scjl::matrix_kind_of_json(text);
            const auto vectors = scjl::ingest_vectors(vectors_path);
            std::vector<std::vector<double>> rows;
            std::uint64_t mn = 0, mm = 0, ms = 0, mseed = 0;
            if (matrix_kind == "sparse_jl") {
                const scjl::SparseJLMatrix A = scjl::sparse_jl_from_json(text);
                mn = A.n; mm = A.m; ms = A.s; mseed = A.seed;
                for (const auto& x : vectors) rows.push_back(scjl::apply(A, x));
            } else {
                const scjl::SignConsistentMatrix A = scjl::sign_consistent_from_json(text);
                mn = A.n; mm = A.m; ms = A.s; mseed = A.seed;
                for (const auto& x : vectors) rows.push_back(scjl::apply(A, x));
            }
            emit(format == "json" ? apply_json(matrix_kind, mn, mm, ms, mseed, rows)
                                  : apply_csv(matrix_kind, mn, mm, ms, mseed, rows),
                 out_path);
            return 0;
        }

        if (cmd_distortion->parsed()) {
            scjl::DistortionConfig config;
            config.eps = eps;
            config.delta = delta;
            config.B = B;
            config.c_s = constants.c_s;
            config.c_m = constants.c_m;
            config.n = n;
            config.trials = trials;
            config.seed = seed;
            config.count = count;
            config.families = parse_families(families_text);
            config.dataset_path = dataset_path;
            const scjl::DistortionReport report = scjl::run_distortion(config);
            emit(format == "json" ? scjl::distortion_json(report)
                                  : scjl::distortion_csv(report),
                 out_path);
            return report.all_pass ? 0 : 2;
        }

        if (cmd_tradeoff->parsed()) {
            scjl::TradeoffConfig config;
            config.eps = eps;
            config.delta = delta;
            config.c_s = constants.c_s;
            config.c_m = constants.c_m;
            config.n = n;
            config.trials = trials;
            config.seed = seed;
            config.grid_points = grid_points;
            if (!b_grid_text.empty())
                config.B_grid = parse_double_list(b_grid_text, "--B-grid");
            config.family = scjl::family_from_name(family_text);
            config.count = count;
            config.dataset_path = dataset_path;
            const scjl::TradeoffReport report = scjl::run_tradeoff(config);
            emit(format == "json" ? scjl::tradeoff_json(report) : scjl::tradeoff_csv(report),
                 out_path);
            return report.all_pass ? 0 : 2;
        }

        if (cmd_bounds->parsed()) {
            scjl::BoundsReportConfig config;
            config.seed = seed;
            config.enum_budget = enum_budget;
            config.matrices_per_size = matrices_per_size;
            const scjl::BoundsReport report = scjl::run_bounds_report(config);
            emit(format == "json" ? scjl::bounds_report_json(report)
                                  : scjl::bounds_report_csv(report),
                 out_path);
            return report.all_pass ? 0 : 2;
        }

        if (cmd_ce->parsed()) {
            const scjl::CounterexampleReport report =
                scjl::compare_dimensions(eps, ce_delta, trials, seed, constants.c_s,
                                         constants.c_m);
            emit(format == "json" ? scjl::counterexample_json(report)
                                  : scjl::counterexample_csv(report),
                 out_path);
            return 0;
        }
    } catch (const scjl::BudgetError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
