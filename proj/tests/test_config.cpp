#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "supergraph/config.hpp"

using namespace supergraph;

TEST_CASE("parse_configuration accepts the documented schema") {
    CHECK(parse_configuration(R"({"sizes": {"1": 3}})").counts() ==
          SizeConfiguration::CountMap{{1, 3}});
    CHECK(parse_configuration(R"({"sizes": {"1": 2, "3": 1}})").counts() ==
          SizeConfiguration::CountMap{{1, 2}, {3, 1}});
    // Keys are ordered numerically, not as strings.
    const auto wide = parse_configuration(R"({"sizes": {"10": 1, "9": 2}})");
    CHECK(wide.max_size() == 10);
}

TEST_CASE("parse_configuration rejects invalid documents") {
    CHECK_THROWS_AS(parse_configuration(R"({"sizes": {"0": 5}})"), ConfigError);
    CHECK_THROWS_AS(parse_configuration(R"({"sizes": {"2": 0}})"), ConfigError);
    CHECK_THROWS_AS(parse_configuration(R"({"sizes": {"2": -3}})"), ConfigError);
    CHECK_THROWS_AS(parse_configuration(R"({"sizes": {"-2": 3}})"), ConfigError);
    CHECK_THROWS_AS(parse_configuration(R"({"sizes": {"1.5": 3}})"), ConfigError);
    CHECK_THROWS_AS(parse_configuration(R"({"sizes": {"2": 1.5}})"), ConfigError);
    CHECK_THROWS_AS(parse_configuration(R"({"sizes": {"2": "3"}})"), ConfigError);
    CHECK_THROWS_AS(parse_configuration(R"({"sizes": {}})"), ConfigError);
    CHECK_THROWS_AS(parse_configuration(R"({"counts": {"1": 1}})"), ConfigError);
    CHECK_THROWS_AS(parse_configuration(R"([1, 2])"), ConfigError);
    CHECK_THROWS_AS(parse_configuration(R"({"sizes": {"1": 1})"), ConfigError);
}

TEST_CASE("parse_shorthand") {
    CHECK(parse_shorthand("1x500,2x250").counts() == SizeConfiguration::CountMap{{1, 500}, {2, 250}});
    CHECK(parse_shorthand(" 3x7 ").counts() == SizeConfiguration::CountMap{{3, 7}});
    CHECK_THROWS_AS(parse_shorthand(""), ConfigError);
    CHECK_THROWS_AS(parse_shorthand("0x5"), ConfigError);
    CHECK_THROWS_AS(parse_shorthand("1x0"), ConfigError);
    CHECK_THROWS_AS(parse_shorthand("1x5,1x3"), ConfigError);
    CHECK_THROWS_AS(parse_shorthand("1-5"), ConfigError);
    CHECK_THROWS_AS(parse_shorthand("1x5,"), ConfigError);
    CHECK_THROWS_AS(parse_shorthand("ax5"), ConfigError);
}

TEST_CASE("derive_counts") {
    auto counts = derive_counts(parse_shorthand("1x2,3x1"));
    CHECK(counts.super_vertices == 3);
    CHECK(counts.vertices == 5);

    counts = derive_counts(parse_shorthand("1x777"));
    CHECK(counts.super_vertices == 777);
    CHECK(counts.vertices == 777);

    counts = derive_counts(parse_shorthand("2x1000"));
    CHECK(counts.super_vertices == 1000);
    CHECK(counts.vertices == 2000);
}

TEST_CASE("empirical_profile") {
    SUBCASE("homogeneous") {
        const auto profile = empirical_profile(parse_shorthand("1x400"));
        CHECK(profile.mu == std::map<std::uint64_t, double>{{1, 1.0}});
        CHECK(profile.u == 1.0);
        CHECK(profile.s2 == 1.0);
    }
    SUBCASE("two sizes") {
        const auto profile = empirical_profile(parse_shorthand("1x500,2x500"));
        CHECK(profile.mu.at(1) == 0.5);
        CHECK(profile.mu.at(2) == 0.5);
        CHECK(profile.u == 1.5);
        CHECK(profile.s2 == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    }
    SUBCASE("single non-unit size") {
        const auto profile = empirical_profile(parse_shorthand("3x300"));
        CHECK(profile.mu.at(3) == 1.0);
        CHECK(profile.u == 3.0);
        CHECK(profile.s2 == 3.0);
    }
}

TEST_CASE("profile identities hold on random configurations") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        SizeConfiguration::CountMap counts;
        const int classes = 1 + static_cast<int>(rng() % 6);
        for (int c = 0; c < classes; ++c) counts[1 + rng() % 40] = 1 + rng() % 5000;
        const SizeConfiguration config(counts);
        const auto [big_n, small_n] = derive_counts(config);

        std::uint64_t n_check = 0;
        for (const auto& [i, k] : counts) n_check += i * k;
        CHECK(n_check == small_n);

        const auto profile = empirical_profile(config);
        double total = 0.0;
        double mean = 0.0;
        double second = 0.0;
        for (const auto& [i, m] : profile.mu) {
            total += m;
            mean += static_cast<double>(i) * m;
            second += static_cast<double>(i * i) * m;
        }
        CHECK(std::abs(total - 1.0) <= 1e-12);
        CHECK(std::abs(mean - profile.u) <= 1e-12 * profile.u);
        CHECK(std::abs(second / profile.u - profile.s2) <= 1e-12 * profile.s2);
        CHECK(profile.s2 >= profile.u);
        CHECK(profile.u >= 1.0);
        const bool all_unit = counts.size() == 1 && counts.begin()->first == 1;
        CHECK((profile.u == 1.0) == all_unit);
        CHECK((profile.s2 == profile.u) == (counts.size() == 1));
        CHECK(profile.u * static_cast<double>(big_n) ==
              doctest::Approx(static_cast<double>(small_n)).epsilon(1e-15));
    }
}

TEST_CASE("serialize then parse recovers every configuration") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        SizeConfiguration::CountMap counts;
        const int classes = 1 + static_cast<int>(rng() % 8);
        for (int c = 0; c < classes; ++c) counts[1 + rng() % 1000] = 1 + rng() % 1'000'000;
        const SizeConfiguration config(counts);
        CHECK(parse_configuration(serialize_configuration(config)) == config);
        CHECK(parse_shorthand(to_shorthand(config)) == config);
    }
}

TEST_CASE("make_profile validates explicit frequencies") {
    const auto profile = make_profile({{1, 0.5}, {2, 0.5}});
    CHECK(profile.u == 1.5);
    CHECK(profile.s2 == doctest::Approx(5.0 / 3.0));
    CHECK_THROWS_AS(make_profile({{1, 0.5}, {2, 0.4}}), ConfigError);
    CHECK_THROWS_AS(make_profile({{0, 1.0}}), ConfigError);
    CHECK_THROWS_AS(make_profile({}), ConfigError);
}

TEST_CASE("power_law_configuration") {
    SUBCASE("degenerate support") {
        CHECK(power_law_configuration(100, 2.0, 1).counts() == SizeConfiguration::CountMap{{1, 100}});
    }
    SUBCASE("strictly decreasing counts on 1..10") {
        const auto config = power_law_configuration(1000, 2.0, 10);
        CHECK(config.super_vertex_count() == 1000);
        REQUIRE(config.counts().size() == 10);
        std::uint64_t previous = std::numeric_limits<std::uint64_t>::max();
        for (const auto& [size, count] : config.counts()) {
            CHECK(count < previous);
            previous = count;
        }
    }
    SUBCASE("tail mass matches the continuous tail within rounding slack") {
        const std::uint64_t big_n = 1000;
        const auto config = power_law_configuration(big_n, 2.0, 10);
        double tail = 0.0;
        for (const auto& [size, count] : config.counts()) {
            if (size >= 3) tail += static_cast<double>(count) / static_cast<double>(big_n);
        }
        const double exact = (std::pow(3.0, -2.0) - std::pow(11.0, -2.0)) / (1.0 - std::pow(11.0, -2.0));
        CHECK(std::abs(tail - exact) <= 10.0 / static_cast<double>(big_n));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(power_law_configuration(100, 1.0, 5), ConfigError);
        CHECK_THROWS_AS(power_law_configuration(100, 0.5, 5), ConfigError);
        CHECK_THROWS_AS(power_law_configuration(10, 2.0, 11), ConfigError);
        CHECK_THROWS_AS(power_law_configuration(10, 2.0, 0), ConfigError);
    }
}

TEST_CASE("power_law_configuration sums to N with non-increasing counts") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint64_t max_size = 1 + rng() % 60;
        const double alpha = 1.1 + static_cast<double>(rng() % 300) / 100.0;
        const std::uint64_t big_n = max_size + rng() % 2'000'000;
        const auto config = power_law_configuration(big_n, alpha, max_size);
        CHECK(config.super_vertex_count() == big_n);
        std::uint64_t previous = std::numeric_limits<std::uint64_t>::max();
        for (const auto& [size, count] : config.counts()) {
            CHECK(size <= max_size);
            CHECK(count <= previous);
            previous = count;
        }
    }
}
