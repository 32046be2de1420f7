#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "omegaerg/weights.hpp"
#include "oracles.hpp"

using namespace omegaerg;

TEST_CASE("frozen values from the factorization oracle") {
    const WeightTable big = build_weight_table(12, WeightKind::BigOmega);
    CHECK(big.value(12) == 3);
    CHECK(big.value(8) == 3);
    CHECK(big.value(9) == 2);

    const WeightTable little = build_weight_table(12, WeightKind::LittleOmega);
    CHECK(little.value(12) == 2);
    CHECK(little.value(4) == 1);
    CHECK(little.value(1) == 0);

    CHECK(build_weight_table(10, WeightKind::LittleOmega).prefix_sum(10) == 11);
    CHECK(build_weight_table(10, WeightKind::BigOmega).prefix_sum(10) == 15);
}

TEST_CASE("sieve matches trial division up to 2 * 10^4") {
    const std::uint64_t bound = 20000;
    const WeightTable little = build_weight_table(bound, WeightKind::LittleOmega);
    const WeightTable big = build_weight_table(bound, WeightKind::BigOmega);
    for (std::uint64_t n = 1; n <= bound; ++n) {
        REQUIRE(little.value(n) == oracles::little_omega(n));
        REQUIRE(big.value(n) == oracles::big_omega(n));
    }
    for (std::uint64_t n = 2; n <= bound; ++n)
        REQUIRE(big.is_prime(n) == oracles::is_prime(n));
}

TEST_CASE("table invariants") {
    const std::uint64_t bound = 5000;
    const WeightTable little = build_weight_table(bound, WeightKind::LittleOmega);
    const WeightTable big = build_weight_table(bound, WeightKind::BigOmega);

    CHECK(little.value(1) == 0);
    for (std::uint64_t n = 1; n <= bound; ++n) {
        CHECK(big.prefix_sum(n) - big.prefix_sum(n - 1) == big.value(n));
        CHECK(little.value(n) <= big.value(n));
        if (n >= 2) {
            CHECK(big.value(n) <= static_cast<unsigned>(std::floor(std::log2(double(n)))));
            CHECK((little.value(n) == big.value(n)) == oracles::squarefree(n));
        }
    }

    // complete additivity of Omega; omega additive on coprime pairs
    std::mt19937_64 rng(42);
    for (int t = 0; t < 2000; ++t) {
        const std::uint64_t m = 2 + rng() % 68;
        const std::uint64_t n = 2 + rng() % (bound / m - 1);
        CHECK(big.value(m * n) == big.value(m) + big.value(n));
        if (std::gcd(m, n) == 1)
            CHECK(little.value(m * n) == little.value(m) + little.value(n));
    }
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(build_weight_table(0, WeightKind::BigOmega), std::invalid_argument);
    CHECK_THROWS_AS(build_weight_table(WeightTable::max_supported_k + 1, WeightKind::BigOmega),
                    std::invalid_argument);
    const WeightTable t = build_weight_table(100, WeightKind::BigOmega);
    CHECK_THROWS_AS(mertens_sum(101, t), std::out_of_range);
    CHECK_THROWS_AS(power_sum(101, 1, t), std::out_of_range);
    CHECK_THROWS_AS(power_sum(10, 0, t), std::invalid_argument);
    CHECK_THROWS_AS(exp_sum(10, 0.0, t), std::invalid_argument);
    CHECK_THROWS_AS(exp_sum(10, -1.5, t), std::invalid_argument);
}

TEST_CASE("mertens_sum") {
    const WeightTable t = build_weight_table(1000, WeightKind::BigOmega);
    CHECK(mertens_sum(1, t) == 0.0);
    CHECK(mertens_sum(2, t) == 0.5);
    CHECK(mertens_sum(10, t) == doctest::Approx(0.5 + 1.0 / 3 + 0.2 + 1.0 / 7).epsilon(1e-14));

    double direct = 0.0;
    for (std::uint64_t p = 2; p <= 1000; ++p)
        if (oracles::is_prime(p)) direct += 1.0 / static_cast<double>(p);
    CHECK(mertens_sum(1000, t) == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("power_sum") {
    const WeightTable t = build_weight_table(1000, WeightKind::BigOmega);
    CHECK(power_sum(10, 1, t) == Wide(15));
    CHECK(power_sum(10, 2, t) == Wide(29));
    CHECK(power_sum(1, 5, t) == Wide(0));

    // mass identity at every K
    for (std::uint64_t k = 1; k <= 1000; k += 97)
        CHECK(power_sum(k, 1, t) == Wide(t.prefix_sum(k)));

    // m = 3 against the oracle
    Wide direct = 0;
    for (std::uint64_t n = 1; n <= 1000; ++n) {
        const Wide v = oracles::big_omega(n);
        direct += v * v * v;
    }
    CHECK(power_sum(1000, 3, t) == direct);

    // large m overflows the 128-bit accumulator explicitly
    CHECK_THROWS_AS(power_sum(1000, 200, t), std::overflow_error);
}

TEST_CASE("exp_sum") {
    const WeightTable big = build_weight_table(4096, WeightKind::BigOmega);
    const WeightTable little = build_weight_table(4096, WeightKind::LittleOmega);
    CHECK(exp_sum(4, 1.9, big) == doctest::Approx(8.41).epsilon(1e-14));
    CHECK(exp_sum(1, 1.9, big) == 1.0);
    CHECK(exp_sum(777, 1.0, big) == doctest::Approx(777.0).epsilon(1e-14));
    // ordering between the kinds at every checkpoint
    for (std::uint64_t k : {2ull, 16ull, 100ull, 1000ull, 4096ull})
        CHECK(exp_sum(k, 1.9, little) <= exp_sum(k, 1.9, big));
}

TEST_CASE("to_decimal_string for wide integers") {
    CHECK(to_decimal_string(0) == "0");
    CHECK(to_decimal_string(12345) == "12345");
    Wide big = 1;
    for (int i = 0; i < 20; ++i) big *= 10;
    CHECK(to_decimal_string(big - 1) == "99999999999999999999");
}

TEST_CASE("binary dump and load round trip") {
    const WeightTable t = build_weight_table(5000, WeightKind::LittleOmega);
    std::stringstream buf;
    dump_weight_table(t, buf);
    const WeightTable back = load_weight_table(buf);
    CHECK(back.k_max() == t.k_max());
    CHECK(back.kind() == t.kind());
    for (std::uint64_t n = 1; n <= 5000; n += 13) {
        CHECK(back.value(n) == t.value(n));
        CHECK(back.prefix_sum(n) == t.prefix_sum(n));
    }
    for (std::uint64_t n = 2; n <= 5000; n += 17)
        CHECK(back.smallest_prime_factor(n) == t.smallest_prime_factor(n));

    // corrupt one value byte: the checksum must catch it
    std::string raw = buf.str();
    raw[45] = static_cast<char>(raw[45] + 1);
    std::stringstream bad(raw);
    CHECK_THROWS_AS(load_weight_table(bad), std::runtime_error);

    std::stringstream truncated(raw.substr(0, 20));
    CHECK_THROWS_AS(load_weight_table(truncated), std::runtime_error);
}
