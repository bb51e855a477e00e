// sep_stats.cpp

#include "twinsieve/sep_stats.hpp"

#include <cmath>

#include "twinsieve/errors.hpp"

namespace twinsieve {

void SeparationHistogram::add(std::uint64_t separation, std::uint64_t count) {
    if (count == 0) return;
    if (separation >= counts_.size()) counts_.resize(separation + 1, 0);
    counts_[separation] += count;
    total_ += count;
    sep_sum_ += separation * count;
}

void SeparationHistogram::merge(const SeparationHistogram& other) {
    if (other.counts_.size() > counts_.size())
        counts_.resize(other.counts_.size(), 0);
    for (std::size_t s = 0; s < other.counts_.size(); s++)
        counts_[s] += other.counts_[s];
    total_ += other.total_;
    sep_sum_ += other.sep_sum_;
}

std::uint64_t SeparationHistogram::count(std::uint64_t separation) const {
    return separation < counts_.size() ? counts_[separation] : 0;
}

std::uint64_t SeparationHistogram::max_separation() const {
    for (std::size_t s = counts_.size(); s-- > 0;)
        if (counts_[s]) return s;
    return 0;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>>
SeparationHistogram::entries() const {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (std::size_t s = 0; s < counts_.size(); s++)
        if (counts_[s]) out.emplace_back(s, counts_[s]);
    return out;
}

FrequencyTable to_frequency_table(const SeparationHistogram& hist) {
    if (hist.total_events() < 2)
        throw InsufficientDataError(
            "frequency table needs at least two separation events");
    FrequencyTable table;
    table.total_events = hist.total_events();
    double total = static_cast<double>(table.total_events);
    for (auto [s, c] : hist.entries()) {
        FrequencyRow row;
        row.separation = s;
        row.count = c;
        row.rel_freq = static_cast<double>(c) / total;
        row.ln_rel_freq = std::log(row.rel_freq);
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace twinsieve
