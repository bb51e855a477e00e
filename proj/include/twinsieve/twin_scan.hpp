// twin_scan.hpp
// Single ordered pass over the prime stream: recognizes twin pairs,
// emits the count of singleton primes between consecutive pairs, and
// freezes checkpoint snapshots along the way.
//
// Conventions (fixed, and load-bearing for everything downstream):
//   * (3,5) is skipped by the separation analysis; (5,7) is analyzed
//     pair #1. This avoids the one overlapping-pair anomaly at the
//     start of the sequence, which never recurs.
//   * TwinCount checkpoint ordinals DO count (3,5), so ordinal k refers
//     to analyzed pair k-1. Reference twin counts are quoted in that
//     ordering, and the k-th twin's high element is the checkpoint's
//     effective bound.
//   * Separation = singleton primes strictly between the high element of
//     one analyzed pair and the low element of the next.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "twinsieve/sep_stats.hpp"

namespace twinsieve {

struct TwinPair {
    std::uint64_t low = 0;
    std::uint64_t high = 0;   // low + 2
    std::uint64_t index = 0;  // 1-based over analyzed pairs; (5,7) is 1
};

struct SeparationEvent {
    std::uint64_t after_twin_index = 0;  // analyzed index of the earlier pair
    std::uint64_t separation = 0;
};

struct ScanState {
    std::uint64_t primes_seen = 0;        // raw pi(last_prime)
    std::uint64_t twins_analyzed = 0;     // analyzed pairs so far
    std::uint64_t pending_singletons = 0; // primes since the last pair's high
    std::uint64_t last_prime = 0;
};

struct CheckpointSpec {
    enum class Kind {
        TwinCount,  // value = twin ordinal, counting (3,5) as the first
        Limit,      // value = inclusive bound N
    };
    Kind kind = Kind::Limit;
    std::uint64_t value = 0;
};

// Statistics frozen at one checkpoint. For Limit checkpoints the trailing
// singletons after the last complete pair are recorded as discarded; for
// TwinCount checkpoints the snapshot lands exactly on a pair, so nothing
// is discarded.
struct CheckpointSnapshot {
    CheckpointSpec spec;
    bool complete = false;
    std::uint64_t n_effective = 0;
    std::uint64_t primes_seen = 0;           // raw pi(n_effective)
    std::uint64_t twins_analyzed = 0;
    std::uint64_t discarded_singletons = 0;
    SeparationHistogram histogram;

    // primes_seen splits exactly into pair members, counted singletons,
    // discarded tail singletons, and the two excluded primes 2 and 3.
    bool count_identity_holds() const {
        return primes_seen == 2 * twins_analyzed + histogram.separation_sum() +
                                  discarded_singletons + 2;
    }
};

class TwinScanner {
public:
    // Checkpoint values must be strictly increasing per kind; TwinCount
    // ordinals must be >= 2 (ordinal 1 is the skipped pair).
    // Throws std::invalid_argument otherwise.
    explicit TwinScanner(std::vector<CheckpointSpec> checkpoints = {});

    // Optional event taps, mostly for tests and diagnostics.
    void on_twin(std::function<void(const TwinPair&)> fn) { on_twin_ = std::move(fn); }
    void on_separation(std::function<void(const SeparationEvent&)> fn) {
        on_separation_ = std::move(fn);
    }

    // Primes must arrive strictly increasing across all feed calls;
    // anything else throws std::logic_error.
    void feed(std::span<const std::uint64_t> primes) {
        for (std::uint64_t p : primes) feed(p);
    }
    void feed(std::uint64_t p);

    // Ends the stream. Limit checkpoints at or above the last prime resolve
    // here; unreached TwinCount checkpoints are recorded as incomplete.
    void finish(std::uint64_t limit);

    const ScanState& state() const { return state_; }
    const SeparationHistogram& histogram() const { return histogram_; }
    const std::vector<CheckpointSnapshot>& snapshots() const { return snapshots_; }

private:
    void snapshot_twin_checkpoints();
    void snapshot_limit_checkpoints(std::uint64_t before_prime);
    CheckpointSnapshot make_snapshot(const CheckpointSpec& spec,
                                     std::uint64_t n_effective,
                                     std::uint64_t discarded) const;

    ScanState state_;
    SeparationHistogram histogram_;
    std::vector<CheckpointSpec> twin_targets_;   // ascending
    std::vector<CheckpointSpec> limit_targets_;  // ascending
    std::size_t next_twin_ = 0;
    std::size_t next_limit_ = 0;
    std::vector<CheckpointSnapshot> snapshots_;
    std::function<void(const TwinPair&)> on_twin_;
    std::function<void(const SeparationEvent&)> on_separation_;
    bool finished_ = false;
};

}  // namespace twinsieve
