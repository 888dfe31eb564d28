#include "qac/inverted_index.hpp"

#include <string>

namespace qac {

inverted_index::inverted_index(std::span<const int_completion> completions, std::uint64_t num_terms)
    : m_num_docs(completions.size()) {
    std::vector<std::vector<std::uint64_t>> postings(num_terms);
    for (auto const& c : completions) {
        for (auto t : c.terms) {
            if (t == 0 || t > num_terms) throw std::invalid_argument("inverted_index: term id out of range");
            postings[t - 1].push_back(c.docid);
        }
    }
    m_lists.reserve(num_terms);
    std::vector<std::uint64_t> minimal(num_terms, 0);
    for (std::uint64_t t = 0; t < num_terms; ++t) {
        auto& p = postings[t];
        std::sort(p.begin(), p.end());
        p.erase(std::unique(p.begin(), p.end()), p.end());
        m_lists.emplace_back(p, m_num_docs + 1);
        if (!p.empty()) minimal[t] = p.front();
    }
    m_minimal = succinct::compact_vector::from(minimal);
}

inverted_index::intersection_iterator inverted_index::intersection(std::span<const term_id_t> terms) const {
    std::vector<list_iterator> its;
    its.reserve(terms.size());
    for (auto t : terms) {
        if (std::any_of(its.begin(), its.end(), [&](auto const& it) { return it.term() == t; })) continue;
        its.push_back(iterator(t));
    }
    return intersection_iterator(std::move(its));
}

std::uint64_t inverted_index::lists_size_in_bytes() const {
    std::uint64_t bits = 0;
    for (auto const& l : m_lists) bits += l.size_in_bits();
    return (bits + 7) / 8;
}

void inverted_index::save_lists(byte_writer& out) const {
    out.write_u64(m_num_docs);
    out.write_u64(m_lists.size());
    for (auto const& l : m_lists) l.save(out);
}

inverted_index inverted_index::load(byte_reader& lists, byte_reader& minimal) {
    inverted_index idx;
    idx.m_num_docs = lists.read_u64();
    auto n = lists.read_u64();
    if (n > lists.remaining()) throw format_error("inverted_index: bad list count");
    idx.m_lists.reserve(n);
    for (std::uint64_t t = 0; t < n; ++t) idx.m_lists.push_back(succinct::elias_fano::load(lists));
    idx.m_minimal = succinct::compact_vector::load(minimal);
    if (idx.m_minimal.size() != n) throw format_error("inverted_index: minimal array size mismatch");
    for (std::uint64_t t = 0; t < n; ++t) {
        auto const& l = idx.m_lists[t];
        if (l.universe() != idx.m_num_docs + 1 && !l.empty())
            throw format_error("inverted_index: list universe mismatch");
        if (l.empty() || idx.m_minimal[t] != l[0])
            throw format_error("inverted_index: minimal[" + std::to_string(t + 1) + "] inconsistent with its list");
    }
    return idx;
}

}  // namespace qac
