// prime_sieve.cpp
// Segmented sieve implementation. The parallel path hands segment indices
// to a small worker pool; finished segments park in a bounded reorder
// window until the consumer thread reaches their index, which keeps
// delivery strictly ordered and memory bounded.

#include "twinsieve/prime_sieve.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <condition_variable>
#include <cstring>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace twinsieve {

void validate(const SieveConfig& cfg) {
    if (cfg.limit < 2)
        throw std::invalid_argument("sieve limit must be >= 2");
    if (cfg.segment_size < 64 || cfg.segment_size % 2 != 0)
        throw std::invalid_argument("segment_size must be even and >= 64");
    if (cfg.workers < 1)
        throw std::invalid_argument("workers must be >= 1");
}

std::uint64_t isqrt(std::uint64_t n) {
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) r--;
    while ((r + 1) * (r + 1) <= n) r++;
    return r;
}

BasePrimes base_primes(std::uint64_t limit_root) {
    if (limit_root < 2)
        throw std::invalid_argument("base_primes: limit_root must be >= 2");
    std::vector<char> mark(limit_root + 1, 1);
    mark[0] = mark[1] = 0;
    for (std::uint64_t i = 2; i * i <= limit_root; i++)
        if (mark[i])
            for (std::uint64_t j = i * i; j <= limit_root; j += i)
                mark[j] = 0;
    BasePrimes out;
    out.primes.reserve(limit_root / 8 + 8);
    for (std::uint64_t i = 2; i <= limit_root; i++)
        if (mark[i]) out.primes.push_back(i);
    return out;
}

void PrimeSegment::append_primes(std::vector<std::uint64_t>& out) const {
    for (std::size_t wi = 0; wi < words.size(); wi++) {
        std::uint64_t w = words[wi];
        while (w) {
            unsigned tz = static_cast<unsigned>(std::countr_zero(w));
            out.push_back(first_odd + 2 * (64 * wi + tz));
            w &= w - 1;
        }
    }
}

PrimeSegment sieve_segment(std::uint64_t begin, std::uint64_t end,
                           std::span<const std::uint64_t> odd_base_primes) {
    PrimeSegment seg;
    seg.begin = begin;
    seg.end = end;
    std::uint64_t lo = begin < 3 ? 3 : begin;
    seg.first_odd = lo | 1;

    std::uint64_t n = seg.candidate_count();
    if (n == 0) return seg;
    seg.words.assign((n + 63) / 64, ~0ull);

    std::uint64_t* words = seg.words.data();
    for (std::uint64_t p : odd_base_primes) {
        std::uint64_t p2 = p * p;
        if (p2 >= end) break;
        // first odd multiple of p in [first_odd, end), not below p*p
        std::uint64_t q = ((seg.first_odd + p - 1) / p) * p;
        if (q < p2) q = p2;
        if ((q & 1) == 0) q += p;
        for (std::uint64_t i = (q - seg.first_odd) / 2; i < n; i += p)
            words[i >> 6] &= ~(1ull << (i & 63));
    }

    // 1 never appears (first_odd >= 3), but the tail word has padding bits
    if (n & 63) seg.words.back() &= (~0ull) >> (64 - (n & 63));
    return seg;
}

PrimeStream::PrimeStream(SieveConfig cfg) : cfg_(cfg) {}

namespace {

struct SegmentPlan {
    std::uint64_t limit;
    std::uint64_t seg_size;
    std::uint64_t count;

    explicit SegmentPlan(const SieveConfig& cfg)
        : limit(cfg.limit), seg_size(cfg.segment_size),
          count((cfg.limit - 1 + cfg.segment_size - 1) / cfg.segment_size) {}

    std::uint64_t begin_of(std::uint64_t i) const { return 2 + i * seg_size; }
    std::uint64_t end_of(std::uint64_t i) const {
        std::uint64_t e = 2 + (i + 1) * seg_size;
        return e < limit + 1 ? e : limit + 1;
    }
};

std::vector<std::uint64_t> extract_batch(const PrimeSegment& seg, bool lead_with_two) {
    std::vector<std::uint64_t> batch;
    batch.reserve(seg.candidate_count() / 4 + 2);
    if (lead_with_two) batch.push_back(2);
    seg.append_primes(batch);
    return batch;
}

}  // namespace

void PrimeStream::run(const Consumer& consume) {
    validate(cfg_);
    std::uint64_t root = isqrt(cfg_.limit);
    BasePrimes base = base_primes(root < 2 ? 2 : root);
    // marking skips even numbers entirely, so 2 is not needed as a base prime
    std::span<const std::uint64_t> odd_base(base.primes);
    if (!odd_base.empty() && odd_base.front() == 2) odd_base = odd_base.subspan(1);

    SegmentPlan plan(cfg_);
    stats_.segments = plan.count;
    stats_.candidates = cfg_.limit - 1;

    if (cfg_.workers <= 1)
        run_sequential(consume, odd_base);
    else
        run_parallel(consume, odd_base);
}

void PrimeStream::run_sequential(const Consumer& consume,
                                 std::span<const std::uint64_t> odd_base) {
    SegmentPlan plan(cfg_);
    std::vector<std::uint64_t> batch;
    for (std::uint64_t i = 0; i < plan.count; i++) {
        PrimeSegment seg;
        try {
            seg = sieve_segment(plan.begin_of(i), plan.end_of(i), odd_base);
        } catch (const std::bad_alloc&) {
            throw std::invalid_argument(
                "segment_size too large for available memory");
        }
        batch.clear();
        if (i == 0) batch.push_back(2);
        seg.append_primes(batch);
        consume(std::span<const std::uint64_t>(batch));
    }
}

void PrimeStream::run_parallel(const Consumer& consume,
                               std::span<const std::uint64_t> odd_base) {
    SegmentPlan plan(cfg_);
    const std::uint64_t window = 2 * static_cast<std::uint64_t>(cfg_.workers);

    std::mutex mu;
    std::condition_variable cv_ready;  // consumer waits for its next index
    std::condition_variable cv_space;  // workers wait for window space
    std::map<std::uint64_t, std::vector<std::uint64_t>> done;
    std::uint64_t delivered = 0;  // next index the consumer needs
    std::atomic<std::uint64_t> next_claim{0};
    std::atomic<bool> stop{false};
    std::exception_ptr worker_error;

    auto worker = [&]() {
        for (;;) {
            std::uint64_t i = next_claim.fetch_add(1);
            if (i >= plan.count || stop.load()) return;
            try {
                PrimeSegment seg = sieve_segment(plan.begin_of(i), plan.end_of(i), odd_base);
                std::vector<std::uint64_t> batch = extract_batch(seg, i == 0);
                std::unique_lock<std::mutex> lock(mu);
                cv_space.wait(lock, [&] {
                    return stop.load() || i < delivered + window;
                });
                if (stop.load()) return;
                done.emplace(i, std::move(batch));
                cv_ready.notify_one();
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!worker_error) worker_error = std::current_exception();
                stop.store(true);
                cv_ready.notify_all();
                cv_space.notify_all();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(cfg_.workers);
    for (unsigned t = 0; t < cfg_.workers; t++) pool.emplace_back(worker);

    std::exception_ptr consumer_error;
    for (std::uint64_t k = 0; k < plan.count; k++) {
        std::vector<std::uint64_t> batch;
        {
            std::unique_lock<std::mutex> lock(mu);
            cv_ready.wait(lock, [&] { return stop.load() || done.count(k) != 0; });
            if (stop.load() && done.count(k) == 0) break;
            batch = std::move(done[k]);
            done.erase(k);
            delivered = k + 1;
            cv_space.notify_all();
        }
        try {
            consume(std::span<const std::uint64_t>(batch));
        } catch (...) {
            consumer_error = std::current_exception();
            stop.store(true);
            cv_ready.notify_all();
            cv_space.notify_all();
            break;
        }
    }

    stop.store(true);
    cv_space.notify_all();
    for (auto& t : pool) t.join();

    if (consumer_error) std::rethrow_exception(consumer_error);
    {
        std::lock_guard<std::mutex> lock(mu);
        if (worker_error) {
            try {
                std::rethrow_exception(worker_error);
            } catch (const std::bad_alloc&) {
                throw std::invalid_argument(
                    "segment_size too large for available memory");
            }
        }
    }
}

std::uint64_t count_primes(std::uint64_t limit) {
    SieveConfig cfg;
    cfg.limit = limit;
    PrimeStream stream(cfg);
    std::uint64_t n = 0;
    stream.run([&](std::span<const std::uint64_t> batch) { n += batch.size(); });
    return n;
}

}  // namespace twinsieve
