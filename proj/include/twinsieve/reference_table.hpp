// reference_table.hpp
// Published benchmark checkpoints for the twin-separation analysis.
//
// Each row records, at a checkpoint placed on the high member N of a twin
// pair: the twin-pair ordinal (counting (3,5) as the first pair), the fitted
// decay slope with its statistical error, and the reported prime count.
// The slope/error columns were produced by an unweighted constrained fit of
// the separation histogram accumulated up to N.

#pragma once

#include <cstdint>
#include <span>

namespace twinsieve {

struct ReferenceRow {
    std::uint64_t twin_count = 0;   // ordinal of the checkpoint twin pair
    double slope = 0.0;
    double stat_error = 0.0;
    std::uint64_t prime_count = 0;  // reported prime count at n
    std::uint64_t n = 0;            // high member of the checkpoint pair
};

// The benchmark rows in ascending order of n.
std::span<const ReferenceRow> reference_rows();

// Row whose twin_count equals `twin_count`, or nullptr if absent.
const ReferenceRow* find_reference_row(std::uint64_t twin_count);

}  // namespace twinsieve
