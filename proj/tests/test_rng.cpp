#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "scjl/rng.hpp"

using namespace scjl;

TEST_SUITE("rng") {

TEST_CASE("splitmix64 matches independently derived vectors") {
    SplitMix64 sm(0);
    CHECK(sm.next() == 0xe220a8397b1dcdafULL);
    CHECK(sm.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(sm.next() == 0x06c45d188009454fULL);
}

TEST_CASE("xoshiro256 matches independently derived vectors") {
    Xoshiro256 rng(42);
    CHECK(rng.next() == 0x15780b2e0c2ec716ULL);
    CHECK(rng.next() == 0x6104d9866d113a7eULL);
    CHECK(rng.next() == 0xae17533239e499a1ULL);
}

TEST_CASE("derive_seed matches vectors and separates streams") {
    CHECK(derive_seed(42, 0) == 0xbdd732262feb6e95ULL);
    CHECK(derive_seed(42, 1) == 0x28efe333b266f103ULL);

    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 4096; ++i) {
        seen.insert(derive_seed(7, i));
        seen.insert(derive_seed(8, i));
    }
    CHECK(seen.size() == 2 * 4096);
}

TEST_CASE("same seed reproduces, different seed diverges") {
    Xoshiro256 a(123), b(123), c(124);
    bool equal = true, differ = false;
    for (int i = 0; i < 256; ++i) {
        const std::uint64_t va = a.next();
        equal = equal && (va == b.next());
        differ = differ || (va != c.next());
    }
    CHECK(equal);
    CHECK(differ);
}

TEST_CASE("next_below stays in range and is roughly uniform") {
    Xoshiro256 rng(9001);
    const std::uint64_t bound = 6, draws = 60000;
    std::vector<std::uint64_t> counts(bound, 0);
    for (std::uint64_t i = 0; i < draws; ++i) {
        const std::uint64_t v = rng.next_below(bound);
        REQUIRE(v < bound);
        ++counts[v];
    }
    const double expect = static_cast<double>(draws) / bound;
    const double se = std::sqrt(draws * (1.0 / bound) * (1.0 - 1.0 / bound));
    for (std::uint64_t v = 0; v < bound; ++v)
        CHECK(std::fabs(static_cast<double>(counts[v]) - expect) <= 3.0 * se);
    CHECK_THROWS_AS(rng.next_below(0), std::invalid_argument);
}

TEST_CASE("next_double lies in [0,1) with the right mean") {
    Xoshiro256 rng(5);
    const int draws = 40000;
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double u = rng.next_double();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    const double se = 1.0 / std::sqrt(12.0 * draws);
    CHECK(std::fabs(sum / draws - 0.5) <= 3.0 * se);
}

TEST_CASE("next_sign is balanced, next_gaussian has unit variance") {
    Xoshiro256 rng(6);
    const int draws = 40000;
    int plus = 0;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < draws; ++i) {
        if (rng.next_sign() > 0) ++plus;
        const double g = rng.next_gaussian();
        sum += g;
        sum2 += g * g;
    }
    CHECK(std::fabs(plus - draws / 2.0) <= 3.0 * std::sqrt(draws * 0.25));
    CHECK(std::fabs(sum / draws) <= 3.0 / std::sqrt(static_cast<double>(draws)));
    // Var of X^2 for standard normal is 2, so se of the mean square is sqrt(2/n).
    CHECK(std::fabs(sum2 / draws - 1.0) <= 3.0 * std::sqrt(2.0 / draws));
}

TEST_CASE("subset sampler draws distinct rows uniformly over subsets") {
    Xoshiro256 rng(77);
    SubsetSampler sampler;
    std::vector<std::uint32_t> out;
    std::map<std::vector<std::uint32_t>, std::uint64_t> freq;
    const std::uint64_t draws = 60000;
    for (std::uint64_t i = 0; i < draws; ++i) {
        sampler.sample(4, 2, rng, out);
        REQUIRE(out.size() == 2);
        REQUIRE(out[0] != out[1]);
        REQUIRE(out[0] < 4);
        REQUIRE(out[1] < 4);
        std::vector<std::uint32_t> key = out;
        std::sort(key.begin(), key.end());
        ++freq[key];
    }
    CHECK(freq.size() == 6);
    const double expect = draws / 6.0;
    const double se = std::sqrt(draws * (1.0 / 6.0) * (5.0 / 6.0));
    for (const auto& [key, count] : freq)
        CHECK(std::fabs(static_cast<double>(count) - expect) <= 3.0 * se);

    // Workspace reuse across a different universe size keeps draws valid.
    sampler.sample(10, 7, rng, out);
    std::set<std::uint32_t> distinct(out.begin(), out.end());
    CHECK(distinct.size() == 7);
    CHECK(*std::max_element(out.begin(), out.end()) < 10);

    CHECK_THROWS_AS(sampler.sample(3, 4, rng, out), std::invalid_argument);
}

}  // TEST_SUITE
