#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qac/common.hpp"
#include "qac/io.hpp"
#include "qac/succinct/elias_fano.hpp"

namespace qac {

// Instrumentation for the search paths of a front-coded set.
struct fc_stats {
    std::uint64_t header_comparisons = 0;
    std::uint64_t bucket_scans = 0;
};

// Symbols are raw bytes.
struct string_symbols {
    using value_type = std::string;
    using view_type = std::string_view;

    static void encode(std::vector<std::uint8_t>& out, value_type const& v, std::size_t from) {
        out.insert(out.end(), v.begin() + static_cast<std::ptrdiff_t>(from), v.end());
    }
    static view_type header(std::span<const std::uint8_t> bytes) {
        return {reinterpret_cast<char const*>(bytes.data()), bytes.size()};
    }
    static void decode_suffix(std::uint8_t const*& p, std::uint64_t len, value_type& cur) {
        cur.append(reinterpret_cast<char const*>(p), len);
        p += len;
    }
};

// Symbols are term ids, each a varint.
struct term_id_symbols {
    using value_type = std::vector<term_id_t>;
    using view_type = std::vector<term_id_t>;

    static void encode(std::vector<std::uint8_t>& out, value_type const& v, std::size_t from) {
        for (auto i = from; i < v.size(); ++i) append_varint(out, v[i]);
    }
    static view_type header(std::span<const std::uint8_t> bytes) {
        view_type v;
        auto p = bytes.data();
        auto end = p + bytes.size();
        while (p < end) v.push_back(static_cast<term_id_t>(decode_varint(p)));
        return v;
    }
    static void decode_suffix(std::uint8_t const*& p, std::uint64_t len, value_type& cur) {
        for (std::uint64_t i = 0; i < len; ++i) cur.push_back(static_cast<term_id_t>(decode_varint(p)));
    }
};

// Two-level front-coded set of sorted values. Each bucket holds an
// uncompressed header (kept in a separate stream) followed by up to
// `bucket_size` values coded as (lcp with previous, suffix length, suffix).
// Positions are zero-based here; wrappers expose one-based ids.
template <typename Symbols>
class front_coded_set {
public:
    using value_type = typename Symbols::value_type;

    front_coded_set() = default;

    front_coded_set(std::span<const value_type> sorted, std::uint64_t bucket_size)
        : m_size(sorted.size()), m_bucket_size(bucket_size) {
        if (bucket_size == 0) throw std::invalid_argument("front coding: bucket size must be >= 1");
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            if (!(sorted[i - 1] < sorted[i]))
                throw std::invalid_argument("front coding: input not strictly ascending at position " +
                                            std::to_string(i));
        }
        std::vector<std::uint64_t> header_offsets{0}, payload_offsets{0};
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (i % (bucket_size + 1) == 0) {
                if (i) payload_offsets.push_back(m_payload.size());
                Symbols::encode(m_headers, sorted[i], 0);
                header_offsets.push_back(m_headers.size());
                continue;
            }
            auto const& prev = sorted[i - 1];
            auto const& cur = sorted[i];
            std::size_t lcp = 0;
            while (lcp < prev.size() && lcp < cur.size() && prev[lcp] == cur[lcp]) ++lcp;
            append_varint(m_payload, lcp);
            append_varint(m_payload, cur.size() - lcp);
            Symbols::encode(m_payload, cur, lcp);
        }
        if (!sorted.empty()) payload_offsets.push_back(m_payload.size());
        m_header_offsets = succinct::elias_fano(header_offsets, header_offsets.back() + 1);
        m_payload_offsets = succinct::elias_fano(payload_offsets, payload_offsets.back() + 1);
    }

    std::uint64_t size() const { return m_size; }
    std::uint64_t bucket_size() const { return m_bucket_size; }
    std::uint64_t num_buckets() const { return m_size == 0 ? 0 : (m_size + m_bucket_size) / (m_bucket_size + 1); }

    typename Symbols::view_type header(std::uint64_t b) const {
        auto begin = m_header_offsets[b], end = m_header_offsets[b + 1];
        return Symbols::header({m_headers.data() + begin, end - begin});
    }

    // Decodes bucket `b`, calling f(position, value) until f returns false.
    template <typename F>
    void scan_bucket(std::uint64_t b, F&& f) const {
        value_type cur(header(b));
        auto pos = b * (m_bucket_size + 1);
        if (!f(pos, cur)) return;
        auto p = m_payload.data() + m_payload_offsets[b];
        auto end = m_payload.data() + m_payload_offsets[b + 1];
        while (p < end) {
            auto lcp = decode_varint(p);
            auto len = decode_varint(p);
            cur.resize(lcp);
            Symbols::decode_suffix(p, len, cur);
            if (!f(++pos, cur)) return;
        }
    }

    value_type access(std::uint64_t i) const {
        if (i >= m_size) throw std::out_of_range("front coding: position out of range");
        value_type out;
        scan_bucket(i / (m_bucket_size + 1), [&](std::uint64_t pos, value_type const& v) {
            if (pos < i) return true;
            out = v;
            return false;
        });
        return out;
    }

    // Number of values v with less(v), for a predicate true on a prefix of the
    // sorted order: one binary search over headers and one bucket scan.
    template <typename Less>
    std::uint64_t count_less(Less&& less, fc_stats* stats = nullptr) const {
        auto buckets = num_buckets();
        std::uint64_t lo = 0, hi = buckets;  // first bucket whose header fails `less`
        while (lo < hi) {
            auto mid = lo + (hi - lo) / 2;
            if (stats) ++stats->header_comparisons;
            if (less(header(mid)))
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo == 0) return 0;
        auto b = lo - 1;
        if (stats) ++stats->bucket_scans;
        std::uint64_t count = b * (m_bucket_size + 1);
        scan_bucket(b, [&](std::uint64_t, value_type const& v) {
            if (!less(v)) return false;
            ++count;
            return true;
        });
        return count;
    }

    // Position of `key`, or size() if absent.
    template <typename Key>
    std::uint64_t find(Key const& key, fc_stats* stats = nullptr) const {
        auto buckets = num_buckets();
        std::uint64_t lo = 0, hi = buckets;
        while (lo < hi) {
            auto mid = lo + (hi - lo) / 2;
            if (stats) ++stats->header_comparisons;
            if (!(key < header(mid)))
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo == 0) return m_size;
        if (stats) ++stats->bucket_scans;
        std::uint64_t found = m_size;
        scan_bucket(lo - 1, [&](std::uint64_t pos, value_type const& v) {
            if (v < key) return true;
            if (!(key < v)) found = pos;
            return false;
        });
        return found;
    }

    std::uint64_t size_in_bytes() const {
        return m_headers.size() + m_payload.size() + (m_header_offsets.size_in_bits() + 7) / 8 +
               (m_payload_offsets.size_in_bits() + 7) / 8 + 16;
    }

    void save(byte_writer& out) const {
        out.write_u64(m_size);
        out.write_u64(m_bucket_size);
        out.write_bytes(m_headers);
        out.write_bytes(m_payload);
        m_header_offsets.save(out);
        m_payload_offsets.save(out);
    }

    static front_coded_set load(byte_reader& in) {
        front_coded_set s;
        s.m_size = in.read_u64();
        s.m_bucket_size = in.read_u64();
        s.m_headers = in.read_bytes();
        s.m_payload = in.read_bytes();
        s.m_header_offsets = succinct::elias_fano::load(in);
        s.m_payload_offsets = succinct::elias_fano::load(in);
        if (s.m_bucket_size == 0 || s.m_header_offsets.size() != s.num_buckets() + 1 ||
            s.m_payload_offsets.size() != s.num_buckets() + 1 ||
            (s.m_size && (s.m_header_offsets[s.num_buckets()] != s.m_headers.size() ||
                          s.m_payload_offsets[s.num_buckets()] != s.m_payload.size())))
            throw format_error("front coding: inconsistent bucket directory");
        return s;
    }

private:
    std::uint64_t m_size = 0;
    std::uint64_t m_bucket_size = 16;
    std::vector<std::uint8_t> m_headers;
    std::vector<std::uint8_t> m_payload;
    succinct::elias_fano m_header_offsets;
    succinct::elias_fano m_payload_offsets;
};

}  // namespace qac
