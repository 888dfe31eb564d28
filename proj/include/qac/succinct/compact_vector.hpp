#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qac/io.hpp"

namespace qac::succinct {

inline unsigned bits_for(std::uint64_t max_value) {
    return max_value == 0 ? 1 : static_cast<unsigned>(std::bit_width(max_value));
}

// Fixed-width bit-packed array of unsigned integers.
class compact_vector {
public:
    compact_vector() = default;

    compact_vector(std::uint64_t n, unsigned width) : m_size(n), m_width(width) {
        if (width > 64) throw std::invalid_argument("compact_vector: width > 64");
        m_words.assign((n * width + 63) / 64 + 1, 0);
    }

    template <typename Range>
    static compact_vector from(Range const& values) {
        std::uint64_t max_value = 0;
        for (auto v : values) max_value = std::max<std::uint64_t>(max_value, v);
        compact_vector cv(std::size(values), bits_for(max_value));
        std::uint64_t i = 0;
        for (auto v : values) cv.set(i++, v);
        return cv;
    }

    void set(std::uint64_t i, std::uint64_t v) {
        if (m_width == 0) return;
        auto pos = i * m_width;
        auto w = pos / 64, shift = pos % 64;
        auto mask = m_width == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << m_width) - 1;
        v &= mask;
        m_words[w] = (m_words[w] & ~(mask << shift)) | (v << shift);
        if (shift + m_width > 64) {
            auto spill = shift + m_width - 64;
            auto hi_mask = (std::uint64_t(1) << spill) - 1;
            m_words[w + 1] = (m_words[w + 1] & ~hi_mask) | (v >> (64 - shift));
        }
    }

    std::uint64_t operator[](std::uint64_t i) const {
        if (m_width == 0) return 0;
        auto pos = i * m_width;
        auto w = pos / 64, shift = pos % 64;
        auto mask = m_width == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << m_width) - 1;
        if (shift + m_width <= 64) return (m_words[w] >> shift) & mask;
        return ((m_words[w] >> shift) | (m_words[w + 1] << (64 - shift))) & mask;
    }

    std::uint64_t at(std::uint64_t i) const {
        if (i >= m_size) throw std::out_of_range("compact_vector: index out of range");
        return (*this)[i];
    }

    std::uint64_t size() const { return m_size; }
    unsigned width() const { return m_width; }
    std::uint64_t size_in_bits() const { return m_words.size() * 64 + 128; }
    std::span<const std::uint64_t> words() const { return m_words; }

    void save(byte_writer& out) const {
        out.write_u64(m_size);
        out.write_u64(m_width);
        out.write_words(m_words);
    }

    static compact_vector load(byte_reader& in) {
        compact_vector cv;
        cv.m_size = in.read_u64();
        cv.m_width = static_cast<unsigned>(in.read_u64());
        cv.m_words = in.read_words();
        if (cv.m_width > 64 || cv.m_words.size() != (cv.m_size * cv.m_width + 63) / 64 + 1)
            throw format_error("compact_vector: inconsistent header");
        return cv;
    }

    friend bool operator==(compact_vector const&, compact_vector const&) = default;

private:
    std::uint64_t m_size = 0;
    unsigned m_width = 0;
    std::vector<std::uint64_t> m_words;
};

}  // namespace qac::succinct
