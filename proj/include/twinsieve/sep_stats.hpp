// sep_stats.hpp
// Histogram of twin-pair separations and its normalized frequency table.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace twinsieve {

// Counts of each observed separation. Keys are unbounded; zero-count bins
// are never reported. Histograms are mergeable value objects.
class SeparationHistogram {
public:
    void add(std::uint64_t separation, std::uint64_t count = 1);
    void merge(const SeparationHistogram& other);

    std::uint64_t total_events() const { return total_; }
    std::uint64_t count(std::uint64_t separation) const;
    // Sum of separation values over all events (each event weighted by its s).
    std::uint64_t separation_sum() const { return sep_sum_; }
    std::uint64_t max_separation() const;
    bool empty() const { return total_ == 0; }

    // (separation, count) pairs, ascending, zero bins skipped.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> entries() const;

private:
    std::vector<std::uint64_t> counts_;  // index = separation
    std::uint64_t total_ = 0;
    std::uint64_t sep_sum_ = 0;
};

struct FrequencyRow {
    std::uint64_t separation = 0;
    std::uint64_t count = 0;
    double rel_freq = 0.0;
    double ln_rel_freq = 0.0;
};

// Rows sorted by separation; rel_freq sums to 1 up to rounding.
struct FrequencyTable {
    std::vector<FrequencyRow> rows;
    std::uint64_t total_events = 0;
};

// Normalizes a histogram. Throws InsufficientDataError when fewer than two
// events were recorded.
FrequencyTable to_frequency_table(const SeparationHistogram& hist);

}  // namespace twinsieve
