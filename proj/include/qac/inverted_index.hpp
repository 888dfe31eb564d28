#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "qac/common.hpp"
#include "qac/corpus.hpp"
#include "qac/succinct/compact_vector.hpp"
#include "qac/succinct/elias_fano.hpp"

namespace qac {

// Per-term Elias-Fano docid lists plus the "first column" of the index
// (minimal[t] = smallest docid containing t).
class inverted_index {
public:
    class list_iterator;
    class intersection_iterator;

    inverted_index() = default;
    inverted_index(std::span<const int_completion> completions, std::uint64_t num_terms);

    std::uint64_t num_terms() const { return m_lists.size(); }
    std::uint64_t num_docs() const { return m_num_docs; }
    std::uint64_t list_size(term_id_t t) const { return list(t).size(); }

    list_iterator iterator(term_id_t t) const;
    intersection_iterator intersection(std::span<const term_id_t> terms) const;

    std::vector<std::uint64_t> list_docids(term_id_t t) const { return list(t).decode(); }

    // One-based by term id.
    std::uint64_t minimal(term_id_t t) const { return m_minimal[t - 1]; }
    succinct::compact_vector const& minimal_array() const { return m_minimal; }

    std::uint64_t lists_size_in_bytes() const;
    std::uint64_t minimal_size_in_bytes() const { return (m_minimal.size_in_bits() + 7) / 8; }

    void save_lists(byte_writer& out) const;
    void save_minimal(byte_writer& out) const { m_minimal.save(out); }
    static inverted_index load(byte_reader& lists, byte_reader& minimal);

private:
    succinct::elias_fano const& list(term_id_t t) const {
        if (t == 0 || t > m_lists.size()) throw std::out_of_range("inverted_index: invalid term id");
        return m_lists[t - 1];
    }

    std::uint64_t m_num_docs = 0;
    std::vector<succinct::elias_fano> m_lists;
    succinct::compact_vector m_minimal;
};

class inverted_index::list_iterator {
public:
    list_iterator() = default;
    list_iterator(succinct::elias_fano const& seq, term_id_t term) : m_it(seq.begin()), m_term(term), m_size(seq.size()) {}

    term_id_t term() const { return m_term; }
    std::uint64_t size() const { return m_size; }
    // Current docid, or `infinity` once exhausted.
    std::uint64_t docid() const { return m_it.value(); }
    bool exhausted() const { return m_it.exhausted(); }
    void next() { m_it.next(); }
    std::uint64_t next_geq(std::uint64_t x) { return m_it.next_geq(x); }

private:
    succinct::elias_fano::iterator m_it;
    term_id_t m_term = 0;
    std::uint64_t m_size = 0;
};

// Lazily enumerates the docids common to every list, in ascending order,
// driving the shortest list and probing the others by next_geq.
class inverted_index::intersection_iterator {
public:
    intersection_iterator(std::vector<list_iterator> lists) : m_lists(std::move(lists)) {
        std::sort(m_lists.begin(), m_lists.end(), [](auto const& a, auto const& b) { return a.size() < b.size(); });
        if (m_lists.empty()) {
            m_docid = infinity;
            return;
        }
        m_docid = m_lists[0].docid();
        align();
    }

    bool has_next() const { return m_docid != infinity; }
    std::uint64_t docid() const { return m_docid; }

    // Returns the current docid and advances past it.
    std::uint64_t next() {
        auto x = m_docid;
        m_lists[0].next();
        m_docid = m_lists[0].docid();
        align();
        return x;
    }

private:
    void align() {
        std::size_t i = 1;
        while (m_docid != infinity && i < m_lists.size()) {
            auto d = m_lists[i].next_geq(m_docid);
            if (d == m_docid) {
                ++i;
                continue;
            }
            m_docid = m_lists[0].next_geq(d);
            i = 1;
        }
    }

    std::vector<list_iterator> m_lists;
    std::uint64_t m_docid = infinity;
};

inline inverted_index::list_iterator inverted_index::iterator(term_id_t t) const { return {list(t), t}; }

}  // namespace qac
