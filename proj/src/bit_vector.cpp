#include "qac/succinct/bit_vector.hpp"

#include <algorithm>
#include <stdexcept>

namespace qac::succinct {

bit_vector::bit_vector(bit_vector_builder&& b, options opts)
    : m_words(std::move(b.m_words)), m_size(b.m_size), m_opts(opts) {
    build_directories();
}

void bit_vector::build_directories() {
    auto blocks = (m_size + block_bits - 1) / block_bits;
    m_super.assign(blocks + 1, 0);
    std::uint64_t ones = 0;
    for (std::uint64_t blk = 0; blk < blocks; ++blk) {
        m_super[blk] = ones;
        auto end = std::min<std::uint64_t>((blk + 1) * words_per_block, m_words.size());
        for (auto w = blk * words_per_block; w < end; ++w) ones += std::popcount(m_words[w]);
    }
    m_super[blocks] = ones;

    // hint[j] = block holding the (j * select_sample + 1)-th one (or zero).
    auto sample = [&](bool want_ones, std::vector<std::uint64_t>& hints) {
        hints.clear();
        std::uint64_t total = want_ones ? ones : m_size - ones;
        std::uint64_t next = 1;
        for (std::uint64_t blk = 0; blk < blocks && next <= total; ++blk) {
            std::uint64_t upto = want_ones ? m_super[blk + 1]
                                           : std::min((blk + 1) * block_bits, m_size) - m_super[blk + 1];
            while (next <= total && next <= upto) {
                hints.push_back(blk);
                next += select_sample;
            }
        }
        hints.push_back(blocks);
    };
    m_select1_hints.clear();
    m_select0_hints.clear();
    if (m_opts.select1_hints) sample(true, m_select1_hints);
    if (m_opts.select0_hints) sample(false, m_select0_hints);
}

std::uint64_t bit_vector::rank1(std::uint64_t i) const {
    if (i > m_size) throw std::out_of_range("rank1: position beyond bit vector length");
    return rank1_unchecked(i);
}

std::uint64_t bit_vector::select_in_block(std::uint64_t blk, std::uint64_t r, bool ones) const {
    auto w = blk * words_per_block;
    for (;; ++w) {
        auto word = ones ? m_words[w] : ~m_words[w];
        auto cnt = static_cast<std::uint64_t>(std::popcount(word));
        if (r <= cnt) return w * 64 + select_in_word(word, r);
        r -= cnt;
    }
}

std::uint64_t bit_vector::select1(std::uint64_t j) const {
    if (j == 0 || j > num_ones()) throw std::out_of_range("select1: occurrence out of range");
    std::uint64_t lo = 0, hi = m_super.size() - 1;
    if (!m_select1_hints.empty()) {
        auto h = (j - 1) / select_sample;
        lo = m_select1_hints[h];
        hi = std::min(m_select1_hints[h + 1] + 1, hi);
    }
    // Last block whose prefix count is < j.
    auto it = std::lower_bound(m_super.begin() + lo, m_super.begin() + hi, j);
    auto blk = static_cast<std::uint64_t>(it - m_super.begin()) - 1;
    return select_in_block(blk, j - m_super[blk], true);
}

std::uint64_t bit_vector::select0(std::uint64_t j) const {
    if (j == 0 || j > num_zeros()) throw std::out_of_range("select0: occurrence out of range");
    std::uint64_t lo = 0, hi = m_super.size() - 1;
    if (!m_select0_hints.empty()) {
        auto h = (j - 1) / select_sample;
        lo = m_select0_hints[h];
        hi = std::min(m_select0_hints[h + 1] + 1, hi);
    }
    auto zeros_before = [&](std::uint64_t blk) { return blk * block_bits - m_super[blk]; };
    while (lo + 1 < hi) {
        auto mid = lo + (hi - lo) / 2;
        if (zeros_before(mid) < j)
            lo = mid;
        else
            hi = mid;
    }
    return select_in_block(lo, j - zeros_before(lo), false);
}

std::uint64_t bit_vector::size_in_bits() const {
    return payload_bits() + 64 * (m_super.size() + m_select1_hints.size() + m_select0_hints.size()) + 64;
}

void bit_vector::save(byte_writer& out) const {
    out.write_u64(m_size);
    out.write_u64((m_opts.select1_hints ? 1u : 0u) | (m_opts.select0_hints ? 2u : 0u));
    out.write_words(m_words);
}

bit_vector bit_vector::load(byte_reader& in) {
    bit_vector_builder b;
    b.m_size = in.read_u64();
    auto flags = in.read_u64();
    b.m_words = in.read_words();
    if (b.m_words.size() != (b.m_size + 63) / 64) throw format_error("bit vector length mismatch");
    return bit_vector(std::move(b), {(flags & 1) != 0, (flags & 2) != 0});
}

}  // namespace qac::succinct
