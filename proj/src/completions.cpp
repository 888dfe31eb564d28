#include "qac/completions.hpp"

#include <algorithm>
#include <string>

namespace qac {

namespace {

struct node_span {
    term_id_t id;
    std::uint64_t first, last;  // zero-based inclusive range of completions
};

succinct::elias_fano encode_monotone(std::vector<std::uint64_t> const& values) {
    auto universe = values.empty() ? 1 : values.back() + 1;
    return succinct::elias_fano(values, universe);
}

}  // namespace

completion_trie::completion_trie(std::span<const int_completion> sorted) : m_num_completions(sorted.size()) {
    if (sorted.empty()) return;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (!lex_less(sorted[i - 1].terms, sorted[i].terms))
            throw std::invalid_argument("completion_trie: completions not strictly sorted");
    }

    // Children of a node whose prefix has `depth` terms and spans [first, last].
    auto partition = [&](node_span const& parent, std::uint64_t depth, std::vector<node_span>& out) {
        if (depth > 0 && parent.id == terminator) return;
        auto i = parent.first;
        if (depth > 0 && sorted[i].terms.size() == depth) {
            if (i == parent.last) return;
            out.push_back({terminator, i, i});
            ++i;
        }
        while (i <= parent.last) {
            auto id = sorted[i].terms[depth];
            auto j = i;
            while (j + 1 <= parent.last && sorted[j + 1].terms[depth] == id) ++j;
            out.push_back({id, i, j});
            i = j + 1;
        }
    };

    std::vector<node_span> parents{{1, 0, sorted.size() - 1}};  // the root
    std::vector<std::vector<std::uint64_t>> level_pointers;
    for (std::uint64_t depth = 0;; ++depth) {
        std::vector<node_span> nodes;
        std::vector<std::uint64_t> pointers;
        for (auto const& p : parents) {
            pointers.push_back(nodes.size());
            partition(p, depth, nodes);
        }
        pointers.push_back(nodes.size());

        std::vector<std::uint64_t> values, left, sizes{0};
        for (std::size_t g = 0; g + 1 < pointers.size(); ++g) {
            // Each sibling group is rebased on the last value of the previous one.
            auto base = values.empty() ? 0 : values.back();
            for (auto i = pointers[g]; i < pointers[g + 1]; ++i) {
                values.push_back(base + nodes[i].id);
                left.push_back(nodes[i].first - i);
                sizes.push_back(sizes.back() + (nodes[i].last - nodes[i].first + 1));
            }
        }
        if (depth > 0) level_pointers.push_back(std::move(pointers));
        if (nodes.empty()) break;

        level l;
        l.nodes = encode_monotone(values);
        l.left = encode_monotone(left);
        l.sizes = encode_monotone(sizes);
        m_levels.push_back(std::move(l));
        parents = std::move(nodes);
    }
    for (std::size_t d = 0; d < m_levels.size(); ++d) m_levels[d].pointers = encode_monotone(level_pointers[d]);
}

term_id_t completion_trie::node_term(std::uint64_t level_idx, std::uint64_t i) const {
    auto const& l = m_levels.at(level_idx);
    if (i >= l.nodes.size()) throw std::out_of_range("completion_trie: node out of range");
    // Locate the sibling group of node i through the parent level's pointers.
    std::uint64_t first = 0;
    if (level_idx > 0) {
        auto const& ptr = m_levels[level_idx - 1].pointers;
        // Last pointer <= i: the group start.
        auto it = ptr.begin();
        it.next_geq(i + 1);
        auto idx = it.index();  // first pointer > i
        first = ptr[idx - 1];
    }
    return static_cast<term_id_t>(l.nodes[i] - group_base(l, first));
}

std::pair<std::uint64_t, std::uint64_t> completion_trie::children(std::uint64_t level_idx, std::uint64_t i) const {
    auto const& l = m_levels.at(level_idx);
    if (i >= l.nodes.size()) throw std::out_of_range("completion_trie: node out of range");
    return {l.pointers[i], l.pointers[i + 1]};
}

id_range completion_trie::node_range(std::uint64_t level_idx, std::uint64_t i) const {
    auto const& l = m_levels.at(level_idx);
    if (i >= l.nodes.size()) throw std::out_of_range("completion_trie: node out of range");
    auto p = l.left[i] + i;
    auto size = l.sizes[i + 1] - l.sizes[i];
    return {p + 1, p + size};
}

bool completion_trie::ends_completion(std::uint64_t level_idx, std::uint64_t i) const {
    auto [first, last] = children(level_idx, i);
    if (first == last) return true;
    auto const& next = m_levels[level_idx + 1];
    return next.nodes[first] == group_base(next, first);
}

id_range completion_trie::locate_prefix(std::span<const term_id_t> prefix, id_range next) const {
    if (!next.valid() || prefix.size() >= m_levels.size()) return id_range::invalid();
    std::uint64_t first = 0, last = m_levels[0].nodes.size();
    for (std::size_t d = 0; d < prefix.size(); ++d) {
        auto const& l = m_levels[d];
        if (first == last || prefix[d] == terminator) return id_range::invalid();
        auto target = group_base(l, first) + prefix[d];
        auto it = l.nodes.at(first);
        if (it.next_geq(target) != target || it.index() >= last) return id_range::invalid();
        auto node = it.index();
        first = l.pointers[node];
        last = l.pointers[node + 1];
    }
    if (first == last) return id_range::invalid();

    auto const& l = m_levels[prefix.size()];
    auto base = group_base(l, first);
    auto it = l.nodes.at(first);
    it.next_geq(base + std::max<std::uint64_t>(next.begin, 1));
    auto lo = it.index();
    if (lo >= last) return id_range::invalid();
    it.next_geq(base + next.end + 1);
    auto hi = std::min(it.index(), last);  // one past the last matching node
    if (lo >= hi) return id_range::invalid();
    auto p = l.left[lo] + lo;
    auto q = l.left[hi - 1] + (hi - 1) + (l.sizes[hi] - l.sizes[hi - 1]) - 1;
    return {p + 1, q + 1};
}

completion_trie::space_breakdown completion_trie::space_in_bits() const {
    space_breakdown s;
    for (auto const& l : m_levels) {
        s.nodes += l.nodes.size_in_bits();
        s.pointers += l.pointers.size_in_bits();
        s.left_extremes += l.left.size_in_bits();
        s.range_sizes += l.sizes.size_in_bits();
    }
    return s;
}

void completion_trie::save(byte_writer& out) const {
    out.write_u64(m_num_completions);
    out.write_u64(m_levels.size());
    for (auto const& l : m_levels) {
        l.nodes.save(out);
        l.pointers.save(out);
        l.left.save(out);
        l.sizes.save(out);
    }
}

completion_trie completion_trie::load(byte_reader& in) {
    completion_trie t;
    t.m_num_completions = in.read_u64();
    auto levels = in.read_u64();
    if (levels > in.remaining()) throw format_error("completion_trie: bad level count");
    for (std::uint64_t d = 0; d < levels; ++d) {
        level l;
        l.nodes = succinct::elias_fano::load(in);
        l.pointers = succinct::elias_fano::load(in);
        l.left = succinct::elias_fano::load(in);
        l.sizes = succinct::elias_fano::load(in);
        if (l.pointers.size() != l.nodes.size() + 1 || l.left.size() != l.nodes.size() ||
            l.sizes.size() != l.nodes.size() + 1)
            throw format_error("completion_trie: inconsistent level " + std::to_string(d));
        t.m_levels.push_back(std::move(l));
    }
    return t;
}

fc_completion_set::fc_completion_set(std::span<const int_completion> sorted, std::uint64_t bucket_size) {
    std::vector<std::vector<term_id_t>> seqs;
    seqs.reserve(sorted.size());
    for (auto const& c : sorted) seqs.push_back(c.terms);
    m_set = front_coded_set<term_id_symbols>(seqs, bucket_size);
}

id_range fc_completion_set::locate_prefix(std::span<const term_id_t> prefix, id_range next, fc_stats* stats) const {
    if (!next.valid()) return id_range::invalid();
    std::vector<term_id_t> low(prefix.begin(), prefix.end()), high(prefix.begin(), prefix.end());
    low.push_back(static_cast<term_id_t>(std::max<std::uint64_t>(next.begin, 1)));
    high.push_back(static_cast<term_id_t>(std::min<std::uint64_t>(next.end, UINT32_MAX)));
    using seq = std::vector<term_id_t>;
    auto lo = m_set.count_less([&](seq const& v) { return lex_less(v, low); }, stats);
    auto hi = m_set.count_less(
        [&](seq const& v) {
            auto n = std::min(v.size(), high.size());
            return !std::lexicographical_compare(high.begin(), high.end(), v.begin(), v.begin() + n);
        },
        stats);
    return lo < hi ? id_range{lo + 1, hi} : id_range::invalid();
}

std::vector<term_id_t> fc_completion_set::access(std::uint64_t lex_id) const {
    if (lex_id == 0 || lex_id > size()) throw std::out_of_range("fc_completion_set: lexicographic id out of range");
    return m_set.access(lex_id - 1);
}

fc_completion_set fc_completion_set::load(byte_reader& in) {
    fc_completion_set s;
    s.m_set = front_coded_set<term_id_symbols>::load(in);
    return s;
}

forward_index::forward_index(std::span<const int_completion> completions, std::uint64_t num_terms) {
    std::vector<int_completion const*> by_docid(completions.size(), nullptr);
    for (auto const& c : completions) {
        if (c.docid == 0 || c.docid > completions.size() || by_docid[c.docid - 1])
            throw std::invalid_argument("forward_index: docids are not a permutation of 1..N");
        by_docid[c.docid - 1] = &c;
    }
    std::vector<std::uint64_t> offsets{0};
    for (auto const* c : by_docid) offsets.push_back(offsets.back() + c->terms.size());
    m_terms = succinct::compact_vector(offsets.back(), succinct::bits_for(num_terms));
    std::uint64_t k = 0;
    for (auto const* c : by_docid) {
        for (auto t : c->terms) m_terms.set(k++, t);
    }
    m_offsets = encode_monotone(offsets);
}

std::vector<term_id_t> forward_index::extract(docid_t docid) const {
    if (docid == 0 || docid > size()) throw std::out_of_range("forward_index: unknown docid " + std::to_string(docid));
    std::vector<term_id_t> out;
    for (auto i = m_offsets[docid - 1], end = m_offsets[docid]; i < end; ++i)
        out.push_back(static_cast<term_id_t>(m_terms[i]));
    return out;
}

void forward_index::save(byte_writer& out) const {
    m_offsets.save(out);
    m_terms.save(out);
}

forward_index forward_index::load(byte_reader& in) {
    forward_index f;
    f.m_offsets = succinct::elias_fano::load(in);
    f.m_terms = succinct::compact_vector::load(in);
    if (f.m_offsets.empty() || f.m_offsets[f.m_offsets.size() - 1] != f.m_terms.size())
        throw format_error("forward_index: offsets do not match payload");
    return f;
}

docid_map::docid_map(std::span<const int_completion> sorted) {
    std::vector<std::uint64_t> docids, lexids(sorted.size());
    docids.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        docids.push_back(sorted[i].docid);
        lexids[sorted[i].docid - 1] = i;
    }
    m_docids = succinct::compact_vector::from(docids);
    m_lexids = succinct::compact_vector::from(lexids);
}

docid_t docid_map::docid_at(std::uint64_t lex_id) const {
    if (lex_id == 0 || lex_id > size()) throw std::out_of_range("docid_map: lexicographic id out of range");
    return (*this)[lex_id];
}

std::uint64_t docid_map::lexid_of(docid_t docid) const {
    if (docid == 0 || docid > size()) throw std::out_of_range("docid_map: docid out of range");
    return lexid_unchecked(docid);
}

std::vector<std::uint64_t> docid_map::docids() const {
    std::vector<std::uint64_t> out(size());
    for (std::uint64_t i = 0; i < size(); ++i) out[i] = m_docids[i];
    return out;
}

void docid_map::save(byte_writer& out) const {
    m_docids.save(out);
    m_lexids.save(out);
}

docid_map docid_map::load(byte_reader& in) {
    docid_map m;
    m.m_docids = succinct::compact_vector::load(in);
    m.m_lexids = succinct::compact_vector::load(in);
    if (m.m_docids.size() != m.m_lexids.size()) throw format_error("docid_map: size mismatch");
    return m;
}

}  // namespace qac
