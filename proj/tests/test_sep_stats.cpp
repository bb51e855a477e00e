#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "twinsieve/errors.hpp"
#include "twinsieve/sep_stats.hpp"

using namespace twinsieve;

TEST_CASE("histogram accumulates counts, totals, and the separation sum") {
    SeparationHistogram h;
    CHECK(h.empty());
    CHECK(h.total_events() == 0);
    CHECK(h.separation_sum() == 0);
    CHECK(h.max_separation() == 0);

    h.add(0);
    h.add(0);
    h.add(1, 3);
    h.add(2);
    CHECK(!h.empty());
    CHECK(h.total_events() == 6);
    CHECK(h.count(0) == 2);
    CHECK(h.count(1) == 3);
    CHECK(h.count(2) == 1);
    CHECK(h.count(3) == 0);
    CHECK(h.count(999) == 0);
    CHECK(h.separation_sum() == 0 * 2 + 1 * 3 + 2 * 1);
    CHECK(h.max_separation() == 2);
}

TEST_CASE("entries are ascending with zero bins skipped") {
    SeparationHistogram h;
    h.add(7, 2);
    h.add(3);
    h.add(12);
    auto entries = h.entries();
    REQUIRE(entries.size() == 3);
    CHECK(entries[0] == std::pair<std::uint64_t, std::uint64_t>{3, 1});
    CHECK(entries[1] == std::pair<std::uint64_t, std::uint64_t>{7, 2});
    CHECK(entries[2] == std::pair<std::uint64_t, std::uint64_t>{12, 1});
}

TEST_CASE("merge is commutative and associative") {
    std::mt19937_64 rng(12345);
    auto random_hist = [&rng]() {
        SeparationHistogram h;
        std::uniform_int_distribution<std::uint64_t> sep(0, 20);
        std::uniform_int_distribution<std::uint64_t> cnt(1, 5);
        for (int i = 0; i < 30; i++) h.add(sep(rng), cnt(rng));
        return h;
    };
    SeparationHistogram a = random_hist();
    SeparationHistogram b = random_hist();
    SeparationHistogram c = random_hist();

    SeparationHistogram ab = a;
    ab.merge(b);
    SeparationHistogram ba = b;
    ba.merge(a);
    CHECK(ab.entries() == ba.entries());
    CHECK(ab.total_events() == ba.total_events());
    CHECK(ab.separation_sum() == ba.separation_sum());

    SeparationHistogram ab_c = ab;
    ab_c.merge(c);
    SeparationHistogram bc = b;
    bc.merge(c);
    SeparationHistogram a_bc = a;
    a_bc.merge(bc);
    CHECK(ab_c.entries() == a_bc.entries());
    CHECK(ab_c.total_events() == a_bc.total_events());
}

TEST_CASE("normalization needs at least two events") {
    SeparationHistogram empty;
    CHECK_THROWS_AS(to_frequency_table(empty), InsufficientDataError);
    SeparationHistogram one;
    one.add(0);
    CHECK_THROWS_AS(to_frequency_table(one), InsufficientDataError);
}

TEST_CASE("single-bin table normalizes to one") {
    SeparationHistogram h;
    h.add(5, 10);
    FrequencyTable table = to_frequency_table(h);
    REQUIRE(table.rows.size() == 1);
    CHECK(table.total_events == 10);
    CHECK(table.rows[0].separation == 5);
    CHECK(table.rows[0].count == 10);
    CHECK(table.rows[0].rel_freq == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(table.rows[0].ln_rel_freq == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("the sub-100 histogram normalizes to thirds, halves, sixths") {
    SeparationHistogram h;
    h.add(0, 2);
    h.add(1, 3);
    h.add(2, 1);
    FrequencyTable table = to_frequency_table(h);
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0].rel_freq == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(table.rows[1].rel_freq == doctest::Approx(1.0 / 2).epsilon(1e-15));
    CHECK(table.rows[2].rel_freq == doctest::Approx(1.0 / 6).epsilon(1e-15));
}

TEST_CASE("relative frequencies sum to one and logs are consistent") {
    std::mt19937_64 rng(777);
    SeparationHistogram h;
    std::uniform_int_distribution<std::uint64_t> sep(0, 60);
    std::uniform_int_distribution<std::uint64_t> cnt(1, 1000);
    for (int i = 0; i < 200; i++) h.add(sep(rng), cnt(rng));

    FrequencyTable table = to_frequency_table(h);
    double sum = 0.0;
    std::uint64_t count_sum = 0;
    for (std::size_t i = 0; i < table.rows.size(); i++) {
        const FrequencyRow& row = table.rows[i];
        if (i > 0) CHECK(row.separation > table.rows[i - 1].separation);
        CHECK(row.count >= 1);
        CHECK(row.rel_freq > 0.0);
        CHECK(row.rel_freq <= 1.0);
        CHECK(row.ln_rel_freq ==
              doctest::Approx(std::log(row.rel_freq)).epsilon(1e-15));
        sum += row.rel_freq;
        count_sum += row.count;
    }
    CHECK(count_sum == table.total_events);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("merged histograms normalize like accumulated ones") {
    SeparationHistogram left, right, whole;
    for (std::uint64_t s : {0ull, 1ull, 1ull, 4ull}) {
        left.add(s);
        whole.add(s);
    }
    for (std::uint64_t s : {0ull, 2ull, 4ull, 4ull, 9ull}) {
        right.add(s);
        whole.add(s);
    }
    left.merge(right);
    CHECK(left.entries() == whole.entries());
    FrequencyTable a = to_frequency_table(left);
    FrequencyTable b = to_frequency_table(whole);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); i++) {
        CHECK(a.rows[i].separation == b.rows[i].separation);
        CHECK(a.rows[i].rel_freq == b.rows[i].rel_freq);
    }
}
