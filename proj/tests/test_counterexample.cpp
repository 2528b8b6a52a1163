#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "scjl/counterexample.hpp"
#include "scjl/oracle.hpp"
#include "scjl/sketch.hpp"

using namespace scjl;

namespace {

SketchParams direct_params(std::uint64_t n, std::uint64_t m, std::uint64_t s) {
    SketchParams p;
    p.n = n;
    p.m = m;
    p.s = s;
    p.eps = 0.5;
    p.delta = 0.05;
    p.B = static_cast<double>(m) / (static_cast<double>(s) * static_cast<double>(s));
    return p;
}

}  // namespace

TEST_SUITE("counterexample") {

TEST_CASE("two spike vector shape") {
    const auto x2 = two_spike_vector(2);
    REQUIRE(x2.size() == 2);
    CHECK(x2[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(x2[1] == x2[0]);
    const auto x5 = two_spike_vector(5);
    REQUIRE(x5.size() == 5);
    CHECK(x5[2] == 0.0);
    CHECK(x5[4] == 0.0);
    CHECK_THROWS_AS(two_spike_vector(1), std::invalid_argument);
}

TEST_CASE("u_p estimate reproduces the smallest closed-form instance") {
    // m=2, s=1, p=2: W = 2*Q with Q Bernoulli(1/2), so U_2 = sqrt(2).
    const auto params = direct_params(2, 2, 1);
    const auto up = u_p_estimate(params, 2, 40000, 3);
    CHECK(up.estimate.method == "mc");
    CHECK(up.estimate.trials == 40000);
    CHECK(up.max_identity_gap <= 1e-9);
    REQUIRE(up.estimate.stderr_value > 0.0);
    CHECK(std::fabs(up.estimate.value - std::sqrt(2.0)) <= 4.0 * up.estimate.stderr_value);
}

TEST_CASE("u_p estimate matches the collision-norm factorization") {
    // W = (sqrt(p)/sqrt(2) + p/2) * Q, so the p-norm factors through the
    // exact hypergeometric norm.
    const auto params = direct_params(8, 44, 4);
    const int p = 4;
    const auto up = u_p_estimate(params, p, 20000, 9);
    const double coeff = std::sqrt(4.0) / std::sqrt(2.0) + 2.0;
    const double expect = coeff * hypergeometric_moment_exact(44, 4, p);
    CHECK(up.max_identity_gap <= 1e-9);
    CHECK(std::fabs(up.estimate.value - expect) <= 4.0 * up.estimate.stderr_value);
}

TEST_CASE("u_p estimate validates its arguments") {
    const auto params = direct_params(4, 8, 2);
    CHECK_THROWS_AS(u_p_estimate(params, 3, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(u_p_estimate(params, 0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(u_p_estimate(params, 2, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(u_p_estimate(direct_params(1, 8, 2), 2, 10, 1), std::invalid_argument);
}

TEST_CASE("dimension comparison reproduces pinned instances") {
    const auto a = dimension_comparison(0.5, 1e-2, kMinB);
    CHECK(a.hw_s == 17);
    CHECK(a.hw_m == 786);
    CHECK(a.paper_s == 10);
    CHECK(a.paper_m == 272);
    CHECK(a.ratio == doctest::Approx(786.0 / 272.0).epsilon(1e-12));

    const auto b = dimension_comparison(0.5, 1e-3, kMinB);
    CHECK(b.hw_s == 33);
    CHECK(b.hw_m == 2961);
    CHECK(b.paper_s == 14);
    CHECK(b.paper_m == 533);

    const auto c = dimension_comparison(0.5, 1e-4, kMinB);
    CHECK(c.hw_s == 53);
    CHECK(c.hw_m == 7636);
    CHECK(c.paper_s == 19);
    CHECK(c.paper_m == 982);

    CHECK(a.ratio < b.ratio);
    CHECK(b.ratio < c.ratio);

    CHECK_THROWS_AS(dimension_comparison(0.5, 1e-2, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(dimension_comparison(0.0, 1e-2, kMinB), std::invalid_argument);
    CHECK_THROWS_AS(dimension_comparison(0.5, 0.0, kMinB), std::invalid_argument);
    CHECK_THROWS_AS(dimension_comparison(0.5, 1e-2, kMinB, 0.0), std::invalid_argument);
}

TEST_CASE("compare_dimensions builds the doubling p grid") {
    const auto report = compare_dimensions(0.5, 1e-7, 800, 17);
    CHECK(report.eps == 0.5);
    CHECK(report.trials == 800);
    CHECK(report.seed == 17);
    CHECK(report.n >= 2);
    REQUIRE(report.rows.size() == 3);  // ln(1e7) ~ 16.1 keeps p = 4, 8, 16

    const int want_p[] = {4, 8, 16};
    const std::uint64_t want_m[] = {174, 696, 2784};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& row = report.rows[i];
        CHECK(row.p == want_p[i]);
        CHECK(row.s == static_cast<std::uint64_t>(2 * want_p[i]));
        CHECK(row.m == want_m[i]);
        CHECK(row.B ==
              doctest::Approx(static_cast<double>(row.m) /
                              (static_cast<double>(row.s) * static_cast<double>(row.s)))
                  .epsilon(1e-15));
        CHECK(row.delta_row == doctest::Approx(std::exp(-row.p)).epsilon(1e-12));
        CHECK(row.max_identity_gap <= 1e-9);

        const double qn = hypergeometric_moment_exact(row.m, row.s, row.p);
        CHECK(row.keyfail_value == doctest::Approx(row.p * qn).epsilon(1e-12));
        CHECK(row.z_norm == doctest::Approx(qn / static_cast<double>(row.s)).epsilon(1e-12));
        CHECK(row.binom_norm >= qn - 1e-12);
        CHECK(row.looseness ==
              doctest::Approx(row.u_p.value / row.z_norm).epsilon(1e-12));

        // The closed-form collapse pins looseness at sqrt(2) p^1.5 + p^2 up
        // to Monte Carlo error in u_p.
        const double ideal = std::sqrt(2.0) * std::pow(row.p, 1.5) +
                             static_cast<double>(row.p) * row.p;
        const double rel_se = row.u_p.stderr_value / row.u_p.value;
        CHECK(std::fabs(row.looseness - ideal) <= 4.0 * rel_se * ideal + 1e-9);
    }
    // Dimension gap widens with p.
    CHECK(report.rows[0].dims.ratio < report.rows[1].dims.ratio);
    CHECK(report.rows[1].dims.ratio < report.rows[2].dims.ratio);
    // Pinned dimensions for the first row at delta_row = e^-4.
    CHECK(report.rows[0].dims.hw_s == 14);
    CHECK(report.rows[0].dims.hw_m == 533);
    CHECK(report.rows[0].dims.paper_s == 8);
    CHECK(report.rows[0].dims.paper_m == 174);

    // Small ln(1/delta) still yields the base p = 4 row.
    const auto tiny = compare_dimensions(0.5, 0.5, 100, 1);
    REQUIRE(tiny.rows.size() == 1);
    CHECK(tiny.rows[0].p == 4);
}

TEST_CASE("compare_dimensions is deterministic in the seed") {
    const auto a = compare_dimensions(0.5, 1e-3, 300, 5);
    const auto b = compare_dimensions(0.5, 1e-3, 300, 5);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        CHECK(a.rows[i].u_p.raw_moment == b.rows[i].u_p.raw_moment);
    const auto c = compare_dimensions(0.5, 1e-3, 300, 6);
    CHECK(a.rows[0].u_p.raw_moment != c.rows[0].u_p.raw_moment);
}

}  // TEST_SUITE
