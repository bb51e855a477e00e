// twin_scan.cpp

#include "twinsieve/twin_scan.hpp"

#include <algorithm>
#include <stdexcept>

namespace twinsieve {

TwinScanner::TwinScanner(std::vector<CheckpointSpec> checkpoints) {
    for (const CheckpointSpec& spec : checkpoints) {
        if (spec.kind == CheckpointSpec::Kind::TwinCount) {
            if (spec.value < 2)
                throw std::invalid_argument(
                    "twin-count checkpoints start at ordinal 2");
            twin_targets_.push_back(spec);
        } else {
            limit_targets_.push_back(spec);
        }
    }
    auto ascending = [](const CheckpointSpec& a, const CheckpointSpec& b) {
        return a.value < b.value;
    };
    if (!std::is_sorted(twin_targets_.begin(), twin_targets_.end(), ascending) ||
        !std::is_sorted(limit_targets_.begin(), limit_targets_.end(), ascending))
        throw std::invalid_argument("checkpoint values must be ascending");
    auto has_dup = [](const std::vector<CheckpointSpec>& v) {
        for (std::size_t i = 1; i < v.size(); i++)
            if (v[i].value == v[i - 1].value) return true;
        return false;
    };
    if (has_dup(twin_targets_) || has_dup(limit_targets_))
        throw std::invalid_argument("checkpoint values must be strictly increasing");
}

void TwinScanner::feed(std::uint64_t p) {
    if (finished_)
        throw std::logic_error("feed after finish");
    if (p <= state_.last_prime || p < 2)
        throw std::logic_error("prime stream out of order");

    // Limit checkpoints sit between the previous prime and this one.
    snapshot_limit_checkpoints(p);

    state_.primes_seen++;
    if (p == state_.last_prime + 2 && state_.last_prime >= 5) {
        // state_.last_prime was provisionally counted as a singleton when it
        // arrived; it is the new pair's low element, so take it back.
        if (state_.twins_analyzed >= 1) {
            SeparationEvent event{state_.twins_analyzed,
                                  state_.pending_singletons - 1};
            histogram_.add(event.separation);
            if (on_separation_) on_separation_(event);
        }
        state_.twins_analyzed++;
        state_.pending_singletons = 0;
        if (on_twin_)
            on_twin_(TwinPair{state_.last_prime, p, state_.twins_analyzed});
        state_.last_prime = p;
        snapshot_twin_checkpoints();
    } else {
        state_.pending_singletons++;
        state_.last_prime = p;
    }
}

void TwinScanner::finish(std::uint64_t limit) {
    if (finished_) return;
    finished_ = true;
    // Limit checkpoints up to and including the stream bound resolve on the
    // final state; the rest (plus unreached twin ordinals) are incomplete.
    for (; next_limit_ < limit_targets_.size(); next_limit_++) {
        const CheckpointSpec& spec = limit_targets_[next_limit_];
        if (spec.value > limit) break;
        snapshots_.push_back(
            make_snapshot(spec, spec.value, state_.pending_singletons));
        snapshots_.back().complete = true;
    }
    for (; next_limit_ < limit_targets_.size(); next_limit_++) {
        snapshots_.push_back(make_snapshot(limit_targets_[next_limit_],
                                           state_.last_prime,
                                           state_.pending_singletons));
    }
    for (; next_twin_ < twin_targets_.size(); next_twin_++) {
        snapshots_.push_back(make_snapshot(twin_targets_[next_twin_],
                                           state_.last_prime,
                                           state_.pending_singletons));
    }
}

void TwinScanner::snapshot_twin_checkpoints() {
    // ordinal k counts (3,5), so analyzed pair j is ordinal j+1
    std::uint64_t ordinal = state_.twins_analyzed + 1;
    while (next_twin_ < twin_targets_.size() &&
           twin_targets_[next_twin_].value <= ordinal) {
        snapshots_.push_back(
            make_snapshot(twin_targets_[next_twin_], state_.last_prime, 0));
        snapshots_.back().complete = true;
        next_twin_++;
    }
}

void TwinScanner::snapshot_limit_checkpoints(std::uint64_t before_prime) {
    while (next_limit_ < limit_targets_.size() &&
           limit_targets_[next_limit_].value < before_prime) {
        const CheckpointSpec& spec = limit_targets_[next_limit_];
        snapshots_.push_back(
            make_snapshot(spec, spec.value, state_.pending_singletons));
        snapshots_.back().complete = true;
        next_limit_++;
    }
}

CheckpointSnapshot TwinScanner::make_snapshot(const CheckpointSpec& spec,
                                              std::uint64_t n_effective,
                                              std::uint64_t discarded) const {
    CheckpointSnapshot snap;
    snap.spec = spec;
    snap.n_effective = n_effective;
    snap.primes_seen = state_.primes_seen;
    snap.twins_analyzed = state_.twins_analyzed;
    // Before the first analyzed pair the pending count still holds the
    // excluded primes 2 and 3; they are not singletons, so take them out.
    if (state_.twins_analyzed == 0)
        snap.discarded_singletons = discarded > 2 ? discarded - 2 : 0;
    else
        snap.discarded_singletons = discarded;
    snap.histogram = histogram_;
    return snap;
}

}  // namespace twinsieve
