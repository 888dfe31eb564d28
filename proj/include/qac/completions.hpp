#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qac/common.hpp"
#include "qac/corpus.hpp"
#include "qac/front_coding.hpp"
#include "qac/succinct/compact_vector.hpp"
#include "qac/succinct/elias_fano.hpp"

namespace qac {

// Integer trie over the lexicographically sorted completions. Level d holds
// the nodes at depth d + 1, grouped by parent, each augmented with the
// lexicographic range of the completions below it. Every level is four
// Elias-Fano sequences:
//   nodes         term ids, made monotone by adding the last value of the
//                 previous sibling group;
//   pointers      first child of each node in the next level;
//   left extremes L[i] = p_i - i;
//   range sizes   prefix sums of q_i - p_i + 1, restarting per level.
// A node that ends a completion and also has children gets a first child
// with term id 0 (the terminator), which sorts before every real term.
class completion_trie {
public:
    static constexpr term_id_t terminator = 0;

    completion_trie() = default;

    // `sorted` must be in lexicographic order (see to_int_completions).
    explicit completion_trie(std::span<const int_completion> sorted);

    // One-based lexicographic range of the completions whose first
    // |prefix| terms equal `prefix` and whose next term lies in `next`.
    id_range locate_prefix(std::span<const term_id_t> prefix, id_range next) const;

    std::uint64_t num_levels() const { return m_levels.size(); }
    std::uint64_t num_nodes(std::uint64_t level) const { return m_levels.at(level).left.size(); }
    std::uint64_t num_completions() const { return m_num_completions; }

    term_id_t node_term(std::uint64_t level, std::uint64_t i) const;
    // Zero-based child range [first, last) in level + 1.
    std::pair<std::uint64_t, std::uint64_t> children(std::uint64_t level, std::uint64_t i) const;
    // One-based lexicographic range covered by the node.
    id_range node_range(std::uint64_t level, std::uint64_t i) const;
    bool ends_completion(std::uint64_t level, std::uint64_t i) const;

    struct space_breakdown {
        std::uint64_t nodes = 0, pointers = 0, left_extremes = 0, range_sizes = 0;
        std::uint64_t total() const { return nodes + pointers + left_extremes + range_sizes; }
    };
    space_breakdown space_in_bits() const;
    std::uint64_t size_in_bytes() const { return (space_in_bits().total() + 7) / 8; }

    void save(byte_writer& out) const;
    static completion_trie load(byte_reader& in);

private:
    struct level {
        succinct::elias_fano nodes;
        succinct::elias_fano pointers;  // empty on the last level
        succinct::elias_fano left;
        succinct::elias_fano sizes;
    };

    std::uint64_t group_base(level const& l, std::uint64_t first) const {
        return first == 0 ? 0 : l.nodes[first - 1];
    }

    std::vector<level> m_levels;
    std::uint64_t m_num_completions = 0;
};

// Front-coded completions in lexicographic order; positions are one-based lexicographic ids.
class fc_completion_set {
public:
    static constexpr std::uint64_t default_bucket_size = 16;

    fc_completion_set() = default;
    fc_completion_set(std::span<const int_completion> sorted, std::uint64_t bucket_size = default_bucket_size);

    id_range locate_prefix(std::span<const term_id_t> prefix, id_range next, fc_stats* stats = nullptr) const;

    // Completion with one-based lexicographic id `lex_id`.
    std::vector<term_id_t> access(std::uint64_t lex_id) const;

    std::uint64_t size() const { return m_set.size(); }
    std::uint64_t size_in_bytes() const { return m_set.size_in_bytes(); }

    void save(byte_writer& out) const { m_set.save(out); }
    static fc_completion_set load(byte_reader& in);

private:
    front_coded_set<term_id_symbols> m_set;
};

// docid -> completion, bit-packed term ids with Elias-Fano offsets.
class forward_index {
public:
    forward_index() = default;
    forward_index(std::span<const int_completion> completions, std::uint64_t num_terms);

    std::uint64_t size() const { return m_offsets.empty() ? 0 : m_offsets.size() - 1; }

    std::vector<term_id_t> extract(docid_t docid) const;

    // True when some term of the completion lies in `range`.
    bool intersects(docid_t docid, id_range range) const {
        auto begin = m_offsets[docid - 1], end = m_offsets[docid];
        for (auto i = begin; i < end; ++i) {
            if (range.contains(m_terms[i])) return true;
        }
        return false;
    }

    std::uint64_t size_in_bytes() const { return (m_offsets.size_in_bits() + m_terms.size_in_bits() + 7) / 8; }

    void save(byte_writer& out) const;
    static forward_index load(byte_reader& in);

private:
    succinct::elias_fano m_offsets;
    succinct::compact_vector m_terms;
};

// Lexicographic id <-> docid permutation.
class docid_map {
public:
    docid_map() = default;
    explicit docid_map(std::span<const int_completion> sorted);

    std::uint64_t size() const { return m_docids.size(); }

    // Docid of the lex_id-th smallest completion (one-based); throws when out of range.
    docid_t docid_at(std::uint64_t lex_id) const;
    std::uint64_t lexid_of(docid_t docid) const;

    // Unchecked one-based accessors for hot paths.
    docid_t operator[](std::uint64_t lex_id) const { return static_cast<docid_t>(m_docids[lex_id - 1]); }
    std::uint64_t lexid_unchecked(docid_t docid) const { return m_lexids[docid - 1] + 1; }

    std::vector<std::uint64_t> docids() const;

    std::uint64_t size_in_bytes() const { return (m_docids.size_in_bits() + m_lexids.size_in_bits() + 7) / 8; }

    void save(byte_writer& out) const;
    static docid_map load(byte_reader& in);

private:
    succinct::compact_vector m_docids;  // lex position -> docid
    succinct::compact_vector m_lexids;  // docid - 1 -> lex position
};

}  // namespace qac
