#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "qac/rmq.hpp"

using namespace qac;

namespace {

// One-based leftmost minimum by linear scan.
std::uint64_t naive_rmq(std::vector<std::uint64_t> const& a, std::uint64_t p, std::uint64_t q) {
    auto best = p;
    for (auto i = p; i <= q; ++i)
        if (a[i - 1] < a[best - 1]) best = i;
    return best;
}

std::vector<std::uint64_t> random_array(std::mt19937_64& rng, std::size_t n, std::uint64_t max_value) {
    std::vector<std::uint64_t> a(n);
    for (auto& x : a) x = std::uniform_int_distribution<std::uint64_t>(0, max_value)(rng);
    return a;
}

succinct_rmq round_trip(succinct_rmq const& r) {
    byte_writer w;
    r.save(w);
    auto bytes = w.release();
    byte_reader in(bytes);
    return succinct_rmq::load(in);
}

}  // namespace

TEST(Rmq, RunningExampleDocids) {
    std::vector<std::uint64_t> docids = {9, 6, 3, 8, 5, 1, 4, 2, 7};
    succinct_rmq r(docids);
    EXPECT_EQ(r.rmq(6, 8), 6u);
    EXPECT_EQ(r.rmq(1, 9), 6u);
    EXPECT_EQ(r.rmq(1, 5), 3u);
    EXPECT_EQ(r.rmq(7, 9), 8u);
    EXPECT_EQ(r.parentheses().size(), 2 * docids.size() + 2);
}

TEST(Rmq, MatchesNaiveScan) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        auto n = std::uniform_int_distribution<std::size_t>(1, trial < 250 ? 200 : 20000)(rng);
        auto a = random_array(rng, n, trial % 2 ? 5 : 1000000);  // small values force many ties
        succinct_rmq r(a);
        auto loaded = round_trip(r);
        for (int q = 0; q < 200; ++q) {
            auto p = std::uniform_int_distribution<std::uint64_t>(1, n)(rng);
            auto e = std::uniform_int_distribution<std::uint64_t>(p, n)(rng);
            auto expect = naive_rmq(a, p, e);
            ASSERT_EQ(r.rmq(p, e), expect) << "n=" << n << " [" << p << "," << e << "]";
            ASSERT_EQ(loaded.rmq(p, e), expect);
        }
    }
}

TEST(Rmq, MonotoneAndConstantArrays) {
    for (std::size_t n : {1, 2, 511, 512, 513, 5000}) {
        std::vector<std::uint64_t> up(n), down(n), flat(n, 7);
        for (std::size_t i = 0; i < n; ++i) {
            up[i] = i;
            down[i] = n - i;
        }
        succinct_rmq ru(up), rd(down), rf(flat);
        for (std::uint64_t p = 1; p <= n; p += 1 + n / 37) {
            for (std::uint64_t q = p; q <= n; q += 1 + n / 41) {
                ASSERT_EQ(ru.rmq(p, q), p);
                ASSERT_EQ(rd.rmq(p, q), q);
                ASSERT_EQ(rf.rmq(p, q), p);
            }
        }
    }
}

TEST(Rmq, SpaceBound) {
    std::mt19937_64 rng(5);
    auto a = random_array(rng, 1 << 16, 1 << 20);
    succinct_rmq r(a);
    EXPECT_LE(double(r.size_in_bits()), 2.5 * double(a.size()) + 1024);
}

TEST(Rmq, ErrorPaths) {
    EXPECT_THROW(succinct_rmq(std::vector<std::uint64_t>{}), std::invalid_argument);
    succinct_rmq r(std::vector<std::uint64_t>{3, 1, 2});
    EXPECT_THROW(r.rmq(0, 1), std::out_of_range);
    EXPECT_THROW(r.rmq(2, 1), std::out_of_range);
    EXPECT_THROW(r.rmq(1, 4), std::out_of_range);
    EXPECT_EQ(r.rmq(2, 2), 2u);
}

TEST(TopK, MatchesSortOracle) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        auto n = std::uniform_int_distribution<std::size_t>(1, 400)(rng);
        auto a = random_array(rng, n, trial % 2 ? 10 : 100000);
        succinct_rmq r(a);
        for (int q = 0; q < 20; ++q) {
            auto p = std::uniform_int_distribution<std::uint64_t>(1, n)(rng);
            auto e = std::uniform_int_distribution<std::uint64_t>(p, n)(rng);
            auto k = std::uniform_int_distribution<std::uint64_t>(0, 30)(rng);
            std::vector<std::pair<std::uint64_t, std::uint64_t>> expect;  // (value, pos)
            for (auto i = p; i <= e; ++i) expect.emplace_back(a[i - 1], i);
            std::sort(expect.begin(), expect.end());
            expect.resize(std::min<std::size_t>(k, expect.size()));
            topk_stats stats;
            auto got = topk_smallest([&](std::uint64_t i) { return a[i - 1]; }, r, p, e, k, &stats);
            ASSERT_EQ(got.size(), expect.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                ASSERT_EQ(got[i].first, expect[i].second);
                ASSERT_EQ(got[i].second, expect[i].first);
            }
            EXPECT_LE(stats.pops, k);
            EXPECT_LE(stats.pushes, 2 * k + 1);
            EXPECT_LE(stats.max_heap_size, k + 1);
        }
    }
}

TEST(TopK, RunningExample) {
    std::vector<std::uint64_t> docids = {9, 6, 3, 8, 5, 1, 4, 2, 7};
    succinct_rmq r(docids);
    auto top = topk_smallest([&](std::uint64_t i) { return docids[i - 1]; }, r, 6, 8, 3);
    ASSERT_EQ(top.size(), 3u);
    EXPECT_EQ(top[0].second, 1u);
    EXPECT_EQ(top[1].second, 2u);
    EXPECT_EQ(top[2].second, 4u);
    EXPECT_THROW(topk_smallest([&](std::uint64_t i) { return docids[i - 1]; }, r, 0, 3, 1), std::out_of_range);
}
