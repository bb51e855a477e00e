// prime_sieve.hpp
// Segmented sieve of Eratosthenes streaming every prime <= limit in
// strictly increasing order.
//
// Representation: 1 bit per odd number, 2 emitted as a special case.
//   bit i of a segment  <->  odd candidate (first_odd + 2*i)
// Memory is O(sqrt(limit) + workers * segment_size), so multi-billion
// limits run in a few MB.
//
// Segments tile [2, limit+1) without overlap. They may be sieved by a
// worker pool, but the consumer always receives them in ascending base
// order, so the output is identical for any worker count.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace twinsieve {

inline constexpr std::uint64_t kDefaultSegmentSize = 1ull << 20;

// Inclusive upper bound plus tuning knobs for one sieve pass.
struct SieveConfig {
    std::uint64_t limit = 0;                          // primes <= limit
    std::uint64_t segment_size = kDefaultSegmentSize; // integers per segment
    unsigned workers = 1;                             // sieving threads
};

// Throws std::invalid_argument when an invariant is broken
// (limit >= 2, segment_size >= 64 and even, workers >= 1).
void validate(const SieveConfig& cfg);

// Largest r with r*r <= n.
std::uint64_t isqrt(std::uint64_t n);

// All primes <= limit_root, ascending, via a simple (non-segmented) sieve.
// These seed the segmented pass. Throws std::invalid_argument if
// limit_root < 2.
struct BasePrimes {
    std::vector<std::uint64_t> primes;
};
BasePrimes base_primes(std::uint64_t limit_root);

// One sieved segment covering integers [begin, end). Bits describe the odd
// candidates only; call append_primes() to expand them.
struct PrimeSegment {
    std::uint64_t begin = 0;      // inclusive
    std::uint64_t end = 0;        // exclusive
    std::uint64_t first_odd = 0;  // first odd candidate >= max(begin, 3)
    std::vector<std::uint64_t> words;

    std::uint64_t candidate_count() const {
        return end > first_odd ? (end - first_odd + 1) / 2 : 0;
    }
    // n must be odd and inside [first_odd, end).
    bool test(std::uint64_t n) const {
        std::uint64_t i = (n - first_odd) / 2;
        return (words[i >> 6] >> (i & 63)) & 1ull;
    }
    void append_primes(std::vector<std::uint64_t>& out) const;
};

// Sieve the odd candidates of [begin, end) against `odd_base_primes`
// (ascending odd primes, at least covering sqrt(end-1)).
PrimeSegment sieve_segment(std::uint64_t begin, std::uint64_t end,
                           std::span<const std::uint64_t> odd_base_primes);

struct SieveStats {
    std::uint64_t segments = 0;    // segments sieved in the pass
    std::uint64_t candidates = 0;  // integers covered, i.e. limit - 1
};

// Ordered stream of all primes in [2, limit]. The consumer callback
// receives one batch per segment (the first batch starts with 2).
class PrimeStream {
public:
    using Consumer = std::function<void(std::span<const std::uint64_t>)>;

    explicit PrimeStream(SieveConfig cfg);

    // Runs the full pass. Throws std::invalid_argument for a bad config and
    // rethrows any consumer exception after shutting the workers down.
    void run(const Consumer& consume);

    const SieveStats& stats() const { return stats_; }
    const SieveConfig& config() const { return cfg_; }

private:
    void run_sequential(const Consumer& consume,
                        std::span<const std::uint64_t> odd_base);
    void run_parallel(const Consumer& consume,
                      std::span<const std::uint64_t> odd_base);

    SieveConfig cfg_;
    SieveStats stats_;
};

// Number of primes <= limit (single sequential pass).
std::uint64_t count_primes(std::uint64_t limit);

}  // namespace twinsieve
