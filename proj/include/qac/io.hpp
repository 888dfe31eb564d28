#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qac/common.hpp"

namespace qac {

// Little-endian stream writer. Every structure serializes itself as a
// sequence of 64-bit words and length-prefixed word/byte arrays.
class byte_writer {
public:
    void write_u64(std::uint64_t x) {
        for (int i = 0; i < 8; ++i) m_buf.push_back(static_cast<std::uint8_t>(x >> (8 * i)));
    }

    void write_u32(std::uint32_t x) {
        for (int i = 0; i < 4; ++i) m_buf.push_back(static_cast<std::uint8_t>(x >> (8 * i)));
    }

    void write_raw(std::span<const std::uint8_t> bytes) {
        m_buf.insert(m_buf.end(), bytes.begin(), bytes.end());
    }

    void write_bytes(std::span<const std::uint8_t> bytes) {
        write_u64(bytes.size());
        write_raw(bytes);
    }

    void write_string(std::string_view s) {
        write_bytes({reinterpret_cast<std::uint8_t const*>(s.data()), s.size()});
    }

    void write_words(std::span<const std::uint64_t> words) {
        write_u64(words.size());
        for (auto w : words) write_u64(w);
    }

    std::vector<std::uint8_t> const& data() const { return m_buf; }
    std::vector<std::uint8_t> release() { return std::move(m_buf); }
    std::size_t size() const { return m_buf.size(); }

private:
    std::vector<std::uint8_t> m_buf;
};

class byte_reader {
public:
    explicit byte_reader(std::span<const std::uint8_t> data) : m_data(data) {}

    std::uint64_t read_u64() {
        need(8);
        std::uint64_t x = 0;
        for (int i = 0; i < 8; ++i) x |= std::uint64_t(m_data[m_pos + i]) << (8 * i);
        m_pos += 8;
        return x;
    }

    std::uint32_t read_u32() {
        need(4);
        std::uint32_t x = 0;
        for (int i = 0; i < 4; ++i) x |= std::uint32_t(m_data[m_pos + i]) << (8 * i);
        m_pos += 4;
        return x;
    }

    std::span<const std::uint8_t> read_raw(std::size_t n) {
        need(n);
        auto s = m_data.subspan(m_pos, n);
        m_pos += n;
        return s;
    }

    std::vector<std::uint8_t> read_bytes() {
        auto n = read_u64();
        auto s = read_raw(n);
        return {s.begin(), s.end()};
    }

    std::string read_string() {
        auto n = read_u64();
        auto s = read_raw(n);
        return {reinterpret_cast<char const*>(s.data()), s.size()};
    }

    std::vector<std::uint64_t> read_words() {
        auto n = read_u64();
        if (n > remaining() / 8) throw format_error("truncated word array");
        std::vector<std::uint64_t> words(n);
        for (auto& w : words) w = read_u64();
        return words;
    }

    std::size_t remaining() const { return m_data.size() - m_pos; }
    bool done() const { return m_pos == m_data.size(); }

private:
    void need(std::size_t n) const {
        if (n > remaining()) throw format_error("unexpected end of stream");
    }

    std::span<const std::uint8_t> m_data;
    std::size_t m_pos = 0;
};

// LEB128 varints for front-coded payloads.
inline void append_varint(std::vector<std::uint8_t>& out, std::uint64_t x) {
    while (x >= 0x80) {
        out.push_back(static_cast<std::uint8_t>(x | 0x80));
        x >>= 7;
    }
    out.push_back(static_cast<std::uint8_t>(x));
}

inline std::uint64_t decode_varint(std::uint8_t const*& p) {
    std::uint64_t x = 0;
    int shift = 0;
    while (*p & 0x80) {
        x |= std::uint64_t(*p++ & 0x7f) << shift;
        shift += 7;
    }
    x |= std::uint64_t(*p++) << shift;
    return x;
}

}  // namespace qac
