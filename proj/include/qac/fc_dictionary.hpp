#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qac/common.hpp"
#include "qac/front_coding.hpp"

namespace qac {

// Front-coded term dictionary. Term ids are one-based lexicographic ranks.
class fc_dictionary {
public:
    static constexpr std::uint64_t default_bucket_size = 16;

    fc_dictionary() = default;

    // `terms` must be strictly ascending (byte-wise); throws otherwise.
    explicit fc_dictionary(std::span<const std::string> terms, std::uint64_t bucket_size = default_bucket_size)
        : m_set(terms, bucket_size) {}

    std::uint64_t size() const { return m_set.size(); }
    std::uint64_t bucket_size() const { return m_set.bucket_size(); }
    std::uint64_t num_buckets() const { return m_set.num_buckets(); }

    // Id of `term`, or invalid_term_id.
    term_id_t locate(std::string_view term, fc_stats* stats = nullptr) const {
        auto pos = m_set.find(term, stats);
        return pos == m_set.size() ? invalid_term_id : static_cast<term_id_t>(pos + 1);
    }

    // Ids of every term starting with `prefix`; the empty prefix spans all.
    id_range locate_prefix(std::string_view prefix, fc_stats* stats = nullptr) const {
        if (prefix.empty()) return size() ? id_range{1, size()} : id_range::invalid();
        auto lo = m_set.count_less([&](std::string_view s) { return s < prefix; }, stats);
        auto hi = m_set.count_less([&](std::string_view s) { return s.substr(0, prefix.size()) <= prefix; }, stats);
        return lo < hi ? id_range{lo + 1, hi} : id_range::invalid();
    }

    // Term with id `id`; throws std::out_of_range outside [1, size()].
    std::string extract(term_id_t id) const {
        if (id == 0 || id > size()) throw std::out_of_range("extract: term id " + std::to_string(id) + " out of range");
        return m_set.access(id - 1);
    }

    std::vector<std::string> decode_all() const {
        std::vector<std::string> out;
        out.reserve(size());
        for (std::uint64_t b = 0; b < num_buckets(); ++b)
            m_set.scan_bucket(b, [&](std::uint64_t, std::string const& s) {
                out.push_back(s);
                return true;
            });
        return out;
    }

    std::uint64_t size_in_bytes() const { return m_set.size_in_bytes(); }

    void save(byte_writer& out) const { m_set.save(out); }
    static fc_dictionary load(byte_reader& in) {
        fc_dictionary d;
        d.m_set = front_coded_set<string_symbols>::load(in);
        return d;
    }

private:
    front_coded_set<string_symbols> m_set;
};

}  // namespace qac
