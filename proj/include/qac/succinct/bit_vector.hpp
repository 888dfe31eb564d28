#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qac/io.hpp"

namespace qac::succinct {

class bit_vector_builder {
public:
    bit_vector_builder() = default;
    explicit bit_vector_builder(std::uint64_t size, bool init = false)
        : m_words((size + 63) / 64, init ? ~std::uint64_t(0) : 0), m_size(size) {
        if (init && size % 64) m_words.back() >>= 64 - size % 64;
    }

    void push_back(bool b) {
        if (m_size % 64 == 0) m_words.push_back(0);
        if (b) m_words.back() |= std::uint64_t(1) << (m_size % 64);
        ++m_size;
    }

    void set(std::uint64_t i, bool b) {
        auto mask = std::uint64_t(1) << (i % 64);
        if (b)
            m_words[i / 64] |= mask;
        else
            m_words[i / 64] &= ~mask;
    }

    // Appends the low `len` bits of `bits`, least significant first.
    void append_bits(std::uint64_t bits, unsigned len) {
        for (unsigned k = 0; k < len; ++k) push_back((bits >> k) & 1);
    }

    std::uint64_t size() const { return m_size; }
    std::vector<std::uint64_t>& words() { return m_words; }

private:
    friend class bit_vector;
    std::vector<std::uint64_t> m_words;
    std::uint64_t m_size = 0;
};

// Immutable bit vector with a two-level rank directory (absolute counts per
// 512-bit superblock, word popcounts below) and optional select samples.
class bit_vector {
public:
    static constexpr std::uint64_t words_per_block = 8;
    static constexpr std::uint64_t block_bits = 64 * words_per_block;
    static constexpr std::uint64_t select_sample = 512;

    struct options {
        bool select1_hints = false;
        bool select0_hints = false;
    };

    bit_vector() { build_directories(); }
    explicit bit_vector(bit_vector_builder&& b) : bit_vector(std::move(b), options{false, false}) {}
    bit_vector(bit_vector_builder&& b, options opts);

    std::uint64_t size() const { return m_size; }
    std::uint64_t num_ones() const { return m_super.back(); }
    std::uint64_t num_zeros() const { return m_size - num_ones(); }

    bool operator[](std::uint64_t i) const { return (m_words[i / 64] >> (i % 64)) & 1; }

    // Number of ones in [0, i). Requires i <= size().
    std::uint64_t rank1(std::uint64_t i) const;
    std::uint64_t rank0(std::uint64_t i) const { return i - rank1(i); }

    // Position of the j-th one (j is one-based). Requires 1 <= j <= num_ones().
    std::uint64_t select1(std::uint64_t j) const;
    std::uint64_t select0(std::uint64_t j) const;

    // Unchecked rank for hot paths.
    std::uint64_t rank1_unchecked(std::uint64_t i) const {
        auto blk = i / block_bits;
        std::uint64_t r = m_super[blk];
        auto w = blk * words_per_block;
        auto last = i / 64;
        for (; w < last; ++w) r += std::popcount(m_words[w]);
        if (i % 64) r += std::popcount(m_words[last] & ((std::uint64_t(1) << (i % 64)) - 1));
        return r;
    }

    // First set bit at position >= pos, or size() when none.
    std::uint64_t next_one(std::uint64_t pos) const {
        if (pos >= m_size) return m_size;
        auto w = pos / 64;
        std::uint64_t word = m_words[w] & (~std::uint64_t(0) << (pos % 64));
        while (word == 0) {
            if (++w == m_words.size()) return m_size;
            word = m_words[w];
        }
        auto r = w * 64 + std::countr_zero(word);
        return r < m_size ? r : m_size;
    }

    // `len` <= 64 bits starting at `pos`, least significant first.
    std::uint64_t get_bits(std::uint64_t pos, unsigned len) const {
        if (len == 0) return 0;
        auto w = pos / 64, shift = pos % 64;
        std::uint64_t mask = len == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << len) - 1;
        if (shift + len <= 64) return (m_words[w] >> shift) & mask;
        return ((m_words[w] >> shift) | (m_words[w + 1] << (64 - shift))) & mask;
    }

    std::span<const std::uint64_t> words() const { return m_words; }

    // Payload plus every directory, in bits.
    std::uint64_t size_in_bits() const;
    std::uint64_t payload_bits() const { return m_words.size() * 64; }

    void save(byte_writer& out) const;
    static bit_vector load(byte_reader& in);

    friend bool operator==(bit_vector const& a, bit_vector const& b) {
        return a.m_size == b.m_size && a.m_words == b.m_words;
    }

private:
    void build_directories();
    std::uint64_t select_in_block(std::uint64_t blk, std::uint64_t r, bool ones) const;

    std::vector<std::uint64_t> m_words;
    std::uint64_t m_size = 0;
    options m_opts;
    std::vector<std::uint64_t> m_super;  // ones before each 512-bit block; back() = total
    std::vector<std::uint64_t> m_select1_hints;
    std::vector<std::uint64_t> m_select0_hints;
};

// Position (0..63) of the r-th set bit of `w`, r one-based.
inline unsigned select_in_word(std::uint64_t w, std::uint64_t r) {
    unsigned base = 0;
    for (;;) {
        auto byte_ones = static_cast<std::uint64_t>(std::popcount(w & 0xff));
        if (r <= byte_ones) break;
        r -= byte_ones;
        w >>= 8;
        base += 8;
    }
    for (std::uint64_t k = 1; k < r; ++k) w &= w - 1;
    return base + std::countr_zero(w);
}

}  // namespace qac::succinct
