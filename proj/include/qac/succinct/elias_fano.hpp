#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qac/common.hpp"
#include "qac/succinct/bit_vector.hpp"
#include "qac/succinct/compact_vector.hpp"

namespace qac::succinct {

// Elias-Fano encoding of a non-decreasing integer sequence drawn from
// [0, universe). Element i is split into `low_bits` explicit low bits and a
// high part stored as a one at position (high + i) of `highs`.
class elias_fano {
public:
    class iterator;

    elias_fano() = default;

    // Throws std::invalid_argument on non-monotone input or values >= universe.
    elias_fano(std::span<const std::uint64_t> values, std::uint64_t universe);

    std::uint64_t size() const { return m_size; }
    bool empty() const { return m_size == 0; }
    std::uint64_t universe() const { return m_universe; }
    unsigned low_bits() const { return m_low_bits; }

    // Checked random access.
    std::uint64_t access(std::uint64_t i) const;

    std::uint64_t operator[](std::uint64_t i) const {
        auto high = m_highs.select1(i + 1) - i;
        return (high << m_low_bits) | m_lows[i];
    }

    // Smallest element >= x, or `infinity`.
    std::uint64_t next_geq(std::uint64_t x) const;

    // Index of the first element >= x (size() if none).
    std::uint64_t lower_bound(std::uint64_t x) const;

    iterator begin() const;
    iterator at(std::uint64_t i) const;

    std::vector<std::uint64_t> decode() const;

    bit_vector const& highs() const { return m_highs; }
    compact_vector const& lows() const { return m_lows; }

    // Raw low + high bits, without rank/select directories.
    std::uint64_t payload_bits() const { return m_size * m_low_bits + m_highs.size(); }
    std::uint64_t size_in_bits() const { return m_highs.size_in_bits() + m_lows.size_in_bits() + 3 * 64; }

    void save(byte_writer& out) const;
    static elias_fano load(byte_reader& in);

private:
    friend class iterator;

    // Index of the first element whose high part is >= h.
    std::uint64_t first_with_high(std::uint64_t h) const {
        return h == 0 ? 0 : m_highs.select0(h) - h + 1;
    }

    std::uint64_t m_size = 0;
    std::uint64_t m_universe = 0;
    unsigned m_low_bits = 0;
    compact_vector m_lows;
    bit_vector m_highs;
};

// Forward-only cursor. value() returns `infinity` once exhausted.
class elias_fano::iterator {
public:
    iterator() = default;

    std::uint64_t value() const { return m_value; }
    std::uint64_t index() const { return m_index; }
    bool exhausted() const { return m_value == infinity; }

    void next() {
        if (exhausted()) return;
        if (++m_index == m_seq->m_size) {
            m_value = infinity;
            return;
        }
        m_high_pos = m_seq->m_highs.next_one(m_high_pos + 1);
        load_value();
    }

    // Advances to the first element >= x; never moves backwards.
    std::uint64_t next_geq(std::uint64_t x) {
        if (m_value >= x) return m_value;
        if (x >= m_seq->m_universe) {
            m_index = m_seq->m_size;
            m_value = infinity;
            return m_value;
        }
        auto h = x >> m_seq->m_low_bits;
        auto current_high = m_high_pos - m_index;
        if (h > current_high) {
            auto start = m_seq->first_with_high(h);
            if (start >= m_seq->m_size) {
                m_index = m_seq->m_size;
                m_value = infinity;
                return m_value;
            }
            m_index = start;
            m_high_pos = m_seq->m_highs.next_one(m_seq->m_highs.select0(h) + 1);
            load_value();
        }
        while (m_value < x) next();
        return m_value;
    }

private:
    friend class elias_fano;

    iterator(elias_fano const* seq, std::uint64_t i) : m_seq(seq), m_index(i) {
        if (i >= seq->m_size) {
            m_index = seq->m_size;
            m_value = infinity;
            return;
        }
        m_high_pos = seq->m_highs.select1(i + 1);
        load_value();
    }

    void load_value() {
        m_value = ((m_high_pos - m_index) << m_seq->m_low_bits) | m_seq->m_lows[m_index];
    }

    elias_fano const* m_seq = nullptr;
    std::uint64_t m_index = 0;
    std::uint64_t m_high_pos = 0;
    std::uint64_t m_value = infinity;
};

inline elias_fano::iterator elias_fano::begin() const { return iterator(this, 0); }
inline elias_fano::iterator elias_fano::at(std::uint64_t i) const { return iterator(this, i); }

}  // namespace qac::succinct
