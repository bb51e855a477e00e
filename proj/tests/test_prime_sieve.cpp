#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "oracle_helpers.hpp"
#include "twinsieve/prime_sieve.hpp"

using namespace twinsieve;

namespace {

std::vector<std::uint64_t> collect(SieveConfig cfg) {
    std::vector<std::uint64_t> out;
    PrimeStream stream(cfg);
    stream.run([&out](std::span<const std::uint64_t> batch) {
        out.insert(out.end(), batch.begin(), batch.end());
    });
    return out;
}

}  // namespace

TEST_CASE("isqrt floors the square root exactly") {
    CHECK(isqrt(0) == 0);
    CHECK(isqrt(1) == 1);
    CHECK(isqrt(3) == 1);
    CHECK(isqrt(4) == 2);
    CHECK(isqrt(24) == 4);
    CHECK(isqrt(25) == 5);
    CHECK(isqrt(999999999999999999ull) == 999999999ull);
    for (std::uint64_t n : {17ull, 1000ull, 123456789ull, (1ull << 62) + 5}) {
        std::uint64_t r = isqrt(n);
        CHECK(r * r <= n);
        CHECK((r + 1) * (r + 1) > n);
    }
}

TEST_CASE("config validation rejects broken invariants") {
    CHECK_THROWS_AS(validate({1, kDefaultSegmentSize, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(validate({100, 63, 1}), std::invalid_argument);
    CHECK_THROWS_AS(validate({100, 65, 1}), std::invalid_argument);
    CHECK_THROWS_AS(validate({100, kDefaultSegmentSize, 0}),
                    std::invalid_argument);
    CHECK_NOTHROW(validate({2, 64, 1}));
}

TEST_CASE("base primes come from a simple ascending sieve") {
    CHECK_THROWS_AS(base_primes(1), std::invalid_argument);
    CHECK(base_primes(2).primes == std::vector<std::uint64_t>{2});
    std::vector<std::uint64_t> expect{2,  3,  5,  7,  11, 13, 17,
                                      19, 23, 29, 31};
    CHECK(base_primes(31).primes == expect);
    CHECK(base_primes(32).primes == expect);
}

TEST_CASE("prime counting boundary and known values") {
    CHECK(count_primes(2) == 1);
    CHECK(count_primes(3) == 2);
    CHECK(count_primes(10) == 4);
    CHECK(count_primes(100) == 25);
    CHECK(count_primes(10000) == 1229);
    CHECK(count_primes(1000000) == 78498);
}

TEST_CASE("stream equals trial division up to 1e5") {
    std::vector<std::uint64_t> got = collect({100000, kDefaultSegmentSize, 1});
    std::vector<std::uint64_t> want = oracle::primes_up_to(100000);
    REQUIRE(got.size() == want.size());
    CHECK(got == want);
    // Spot-check primality of a sample directly against trial division.
    for (std::size_t i = 0; i < got.size(); i += 997)
        CHECK(oracle::is_prime(got[i]));
}

TEST_CASE("segment size never changes the output") {
    std::vector<std::uint64_t> baseline = oracle::primes_up_to(100000);
    for (std::uint64_t seg : {64ull, 1024ull, 1ull << 20}) {
        std::vector<std::uint64_t> got = collect({100000, seg, 1});
        CHECK(got == baseline);
    }
}

TEST_CASE("worker count never changes the output") {
    std::vector<std::uint64_t> baseline = collect({100000, 4096, 1});
    for (unsigned workers : {2u, 4u, 8u}) {
        std::vector<std::uint64_t> got = collect({100000, 4096, workers});
        CHECK(got == baseline);
    }
}

TEST_CASE("output is strictly increasing and starts at 2") {
    std::vector<std::uint64_t> got = collect({10000, 512, 1});
    REQUIRE(!got.empty());
    CHECK(got.front() == 2);
    CHECK(std::is_sorted(got.begin(), got.end()));
    CHECK(std::adjacent_find(got.begin(), got.end()) == got.end());
}

TEST_CASE("composites built from base primes are absent") {
    std::vector<std::uint64_t> got = collect({100000, 8192, 1});
    const std::vector<std::uint64_t>& base = base_primes(317).primes;
    for (std::size_t i = 0; i < base.size(); i += 3)
        for (std::size_t j = i; j < base.size(); j += 5) {
            std::uint64_t composite = base[i] * base[j];
            if (composite > 100000) continue;
            CHECK(!std::binary_search(got.begin(), got.end(), composite));
        }
}

TEST_CASE("segment bitmap agrees with trial division") {
    const std::vector<std::uint64_t>& base = base_primes(100).primes;
    std::vector<std::uint64_t> odd_base(base.begin() + 1, base.end());
    PrimeSegment seg = sieve_segment(5000, 6000, odd_base);
    CHECK(seg.begin == 5000);
    CHECK(seg.end == 6000);
    CHECK(seg.first_odd == 5001);
    CHECK(seg.candidate_count() == 500);
    for (std::uint64_t n = seg.first_odd; n < seg.end; n += 2)
        CHECK(seg.test(n) == oracle::is_prime(n));
    std::vector<std::uint64_t> expanded;
    seg.append_primes(expanded);
    std::uint64_t count = 0;
    for (std::uint64_t n = 5000; n < 6000; n++)
        if (oracle::is_prime(n)) count++;
    CHECK(expanded.size() == count);
}

TEST_CASE("stats count segments and covered candidates") {
    PrimeStream stream({100000, 4096, 1});
    std::uint64_t seen = 0;
    stream.run([&seen](std::span<const std::uint64_t> batch) {
        seen += batch.size();
    });
    CHECK(seen == 9592);  // primes <= 1e5
    CHECK(stream.stats().candidates == 99999);
    CHECK(stream.stats().segments == (99999 + 4095) / 4096);
}

TEST_CASE("consumer exceptions propagate from both drivers") {
    for (unsigned workers : {1u, 4u}) {
        PrimeStream stream({100000, 4096, workers});
        CHECK_THROWS_AS(
            stream.run([](std::span<const std::uint64_t>) {
                throw std::runtime_error("stop");
            }),
            std::runtime_error);
    }
}

TEST_CASE("tiny limits emit exactly the right primes") {
    CHECK(collect({2, 64, 1}) == std::vector<std::uint64_t>{2});
    CHECK(collect({3, 64, 1}) == std::vector<std::uint64_t>{2, 3});
    CHECK(collect({4, 64, 1}) == std::vector<std::uint64_t>{2, 3});
    CHECK(collect({5, 64, 1}) == std::vector<std::uint64_t>{2, 3, 5});
}
