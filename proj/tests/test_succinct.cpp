#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "qac/io.hpp"
#include "qac/succinct/bit_vector.hpp"
#include "qac/succinct/compact_vector.hpp"
#include "qac/succinct/elias_fano.hpp"

using namespace qac;
using namespace qac::succinct;

namespace {

std::vector<bool> random_bits(std::mt19937_64& rng, std::size_t n, double density) {
    std::bernoulli_distribution coin(density);
    std::vector<bool> bits(n);
    for (std::size_t i = 0; i < n; ++i) bits[i] = coin(rng);
    return bits;
}

bit_vector make(std::vector<bool> const& bits, bit_vector::options opts = {false, false}) {
    bit_vector_builder b;
    for (bool x : bits) b.push_back(x);
    return bit_vector(std::move(b), opts);
}

template <typename T>
T round_trip(T const& v) {
    byte_writer w;
    v.save(w);
    auto bytes = w.release();
    byte_reader r(bytes);
    auto out = T::load(r);
    EXPECT_TRUE(r.done());
    return out;
}

}  // namespace

TEST(BitVector, RankSelectMatchBitScan) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 60; ++trial) {
        auto n = std::uniform_int_distribution<std::size_t>(0, 5000)(rng);
        double density = std::array{0.01, 0.3, 0.5, 0.9, 1.0, 0.0}[trial % 6];
        auto bits = random_bits(rng, n, density);
        auto bv = make(bits, {trial % 2 == 0, trial % 3 == 0});
        ASSERT_EQ(bv.size(), n);
        std::uint64_t ones = 0;
        std::vector<std::uint64_t> one_pos, zero_pos;
        for (std::size_t i = 0; i <= n; ++i) {
            ASSERT_EQ(bv.rank1(i), ones) << i;
            ASSERT_EQ(bv.rank0(i), i - ones);
            if (i < n) {
                ASSERT_EQ(bv[i], bits[i]);
                (bits[i] ? one_pos : zero_pos).push_back(i);
                ones += bits[i];
            }
        }
        ASSERT_EQ(bv.num_ones(), ones);
        for (std::size_t j = 0; j < one_pos.size(); ++j) ASSERT_EQ(bv.select1(j + 1), one_pos[j]);
        for (std::size_t j = 0; j < zero_pos.size(); ++j) ASSERT_EQ(bv.select0(j + 1), zero_pos[j]);
        for (std::size_t i = 0; i < n; i += 7) {
            auto expect = std::lower_bound(one_pos.begin(), one_pos.end(), i);
            ASSERT_EQ(bv.next_one(i), expect == one_pos.end() ? n : *expect);
        }
        EXPECT_EQ(round_trip(bv), bv);
    }
}

TEST(BitVector, OutOfRangeQueriesThrow) {
    auto bv = make({true, false, true});
    EXPECT_THROW(bv.rank1(4), std::out_of_range);
    EXPECT_THROW(bv.select1(0), std::out_of_range);
    EXPECT_THROW(bv.select1(3), std::out_of_range);
    EXPECT_THROW(bv.select0(2), std::out_of_range);
    EXPECT_EQ(bv.select0(1), 1u);
}

TEST(BitVector, GetBitsAcrossWords) {
    bit_vector_builder b;
    b.append_bits(0xdeadbeefcafebabeULL, 64);
    b.append_bits(0x1234, 16);
    bit_vector bv(std::move(b));
    EXPECT_EQ(bv.get_bits(0, 64), 0xdeadbeefcafebabeULL);
    EXPECT_EQ(bv.get_bits(60, 8), ((0xdeadbeefcafebabeULL >> 60) | (0x4ULL << 4)) & 0xff);
    EXPECT_EQ(bv.get_bits(64, 16), 0x1234u);
}

TEST(BitVector, SelectInWord) {
    EXPECT_EQ(select_in_word(0b1011, 1), 0u);
    EXPECT_EQ(select_in_word(0b1011, 2), 1u);
    EXPECT_EQ(select_in_word(0b1011, 3), 3u);
    EXPECT_EQ(select_in_word(1ULL << 63, 1), 63u);
}

TEST(CompactVector, StoresValuesAtEveryWidth) {
    std::mt19937_64 rng(2);
    for (unsigned width = 1; width <= 64; ++width) {
        std::vector<std::uint64_t> values(200);
        auto mask = width == 64 ? ~0ULL : (1ULL << width) - 1;
        for (auto& v : values) v = rng() & mask;
        compact_vector cv(values.size(), width);
        for (std::size_t i = 0; i < values.size(); ++i) cv.set(i, values[i]);
        for (std::size_t i = 0; i < values.size(); ++i) ASSERT_EQ(cv[i], values[i]) << width;
        EXPECT_EQ(round_trip(cv), cv);
    }
    EXPECT_EQ(bits_for(0), 1u);
    EXPECT_EQ(bits_for(255), 8u);
    EXPECT_EQ(bits_for(256), 9u);
    auto cv = compact_vector::from(std::vector<std::uint64_t>{1, 2, 3});
    EXPECT_THROW(cv.at(3), std::out_of_range);
}

// Reference: plain sorted vector with std::lower_bound.
TEST(EliasFano, MatchesBinarySearchOracle) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        auto n = std::uniform_int_distribution<std::size_t>(0, 300)(rng);
        auto universe = std::uniform_int_distribution<std::uint64_t>(1, trial % 3 == 0 ? 1000 : 1ULL << 40)(rng);
        std::vector<std::uint64_t> v(n);
        for (auto& x : v) x = std::uniform_int_distribution<std::uint64_t>(0, universe - 1)(rng);
        std::sort(v.begin(), v.end());
        elias_fano ef(v, universe);
        ASSERT_EQ(ef.size(), n);
        ASSERT_EQ(ef.decode(), v);
        for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(ef.access(i), v[i]);
        for (int q = 0; q < 50; ++q) {
            auto x = std::uniform_int_distribution<std::uint64_t>(0, universe + 2)(rng);
            auto it = std::lower_bound(v.begin(), v.end(), x);
            ASSERT_EQ(ef.next_geq(x), it == v.end() ? infinity : *it);
            ASSERT_EQ(ef.lower_bound(x), std::uint64_t(it - v.begin()));
        }
        // Iterator: skip forward with next_geq, compare with the oracle.
        auto it = ef.begin();
        std::uint64_t target = 0;
        while (!it.exhausted()) {
            target += std::uniform_int_distribution<std::uint64_t>(0, universe / 20 + 1)(rng);
            auto got = it.next_geq(target);
            auto expect = std::lower_bound(v.begin() + it.index(), v.end(), target);
            ASSERT_EQ(got, expect == v.end() ? infinity : *expect);
        }
        auto copy = round_trip(ef);
        ASSERT_EQ(copy.decode(), v);
    }
}

TEST(EliasFano, IteratorWalksAllValues) {
    std::vector<std::uint64_t> v = {0, 0, 3, 3, 3, 9, 64, 65, 1000};
    elias_fano ef(v, 1001);
    std::vector<std::uint64_t> seen;
    for (auto it = ef.begin(); !it.exhausted(); it.next()) seen.push_back(it.value());
    EXPECT_EQ(seen, v);
    EXPECT_EQ(ef.at(5).value(), 9u);
    auto it = ef.begin();
    EXPECT_EQ(it.next_geq(4), 9u);
    EXPECT_EQ(it.next_geq(2), 9u);  // never moves backwards
    EXPECT_EQ(it.next_geq(1001), infinity);
    EXPECT_TRUE(it.exhausted());
}

TEST(EliasFano, RejectsBadInput) {
    std::vector<std::uint64_t> down = {3, 2};
    EXPECT_THROW(elias_fano(down, 10), std::invalid_argument);
    std::vector<std::uint64_t> big = {3, 10};
    EXPECT_THROW(elias_fano(big, 10), std::invalid_argument);
    elias_fano empty(std::vector<std::uint64_t>{}, 1);
    EXPECT_EQ(empty.next_geq(0), infinity);
    EXPECT_TRUE(empty.begin().exhausted());
    EXPECT_THROW(empty.access(0), std::out_of_range);
}

TEST(EliasFano, PayloadNearLowerBound) {
    // n * (2 + ceil(log(u / n))) bits, plus at most one word of slack per part.
    std::vector<std::uint64_t> v;
    for (std::uint64_t i = 0; i < 10000; ++i) v.push_back(i * 97);
    elias_fano ef(v, v.back() + 1);
    double per_element = double(ef.payload_bits()) / double(v.size());
    EXPECT_LT(per_element, 2 + std::ceil(std::log2(97.0)) + 0.01);
}

TEST(Io, VarintRoundTrip) {
    std::vector<std::uint8_t> buf;
    std::vector<std::uint64_t> values = {0, 1, 127, 128, 300, 1ULL << 35, ~0ULL};
    for (auto v : values) append_varint(buf, v);
    auto p = static_cast<std::uint8_t const*>(buf.data());
    for (auto v : values) EXPECT_EQ(decode_varint(p), v);
    EXPECT_EQ(p, buf.data() + buf.size());
}

TEST(Io, ReaderRejectsTruncation) {
    byte_writer w;
    w.write_u64(42);
    auto bytes = w.release();
    bytes.pop_back();
    byte_reader r(bytes);
    EXPECT_THROW(r.read_u64(), format_error);
}
