#include "qac/engine.hpp"

#include <algorithm>
#include <chrono>
#include <queue>

#include "qac/corpus.hpp"

namespace qac {

namespace {

using clock_type = std::chrono::steady_clock;

double micros_since(clock_type::time_point& t) {
    auto now = clock_type::now();
    double us = std::chrono::duration<double, std::micro>(now - t).count();
    t = now;
    return us;
}

bool ends_with_space(std::string_view s) {
    return !s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r' ||
                          s.back() == '\f' || s.back() == '\v');
}

}  // namespace

std::optional<search_mode> parse_mode(std::string_view s) {
    if (s == "prefix") return search_mode::prefix;
    if (s == "conjunctive") return search_mode::conjunctive;
    return std::nullopt;
}

std::optional<search_variant> parse_variant(std::string_view s) {
    if (s == "heap") return search_variant::heap;
    if (s == "fwd") return search_variant::fwd;
    if (s == "fc") return search_variant::fc;
    return std::nullopt;
}

char const* to_string(search_mode m) { return m == search_mode::prefix ? "prefix" : "conjunctive"; }

char const* to_string(search_variant v) {
    switch (v) {
        case search_variant::heap: return "heap";
        case search_variant::fwd: return "fwd";
        case search_variant::fc: return "fc";
    }
    return "?";
}

bool parsed_query::prefix_has_oov() const {
    return std::find(prefix.begin(), prefix.end(), invalid_term_id) != prefix.end();
}

std::vector<docid_t> result_set::docids() const {
    std::vector<docid_t> out;
    for (auto const& r : results) out.push_back(r.docid);
    return out;
}

std::string heap_step::to_string() const {
    auto num = [](std::uint64_t v) { return v == infinity ? std::string("inf") : std::to_string(v); };
    std::string s = "x=" + num(candidate) + " top=t" + std::to_string(term) + ":" + num(top) + " ";
    switch (what) {
        case action::match: return s + "match";
        case action::advance: return s + "advance " + num(moved_to);
        case action::pop: return s + "pop " + num(moved_to);
        case action::stop: return s + "stop";
    }
    return s;
}

parsed_query engine::parse(std::string_view query) const {
    parsed_query q;
    q.raw = std::string(query);
    auto tokens = tokenize(query);
    q.num_tokens = tokens.size();
    if (tokens.empty()) return q;
    std::size_t prefix_len = tokens.size();
    if (!ends_with_space(query)) {
        q.suffix = std::string(tokens.back());
        --prefix_len;
    }
    q.prefix.reserve(prefix_len);
    for (std::size_t i = 0; i < prefix_len; ++i) q.prefix.push_back(m_idx.dictionary.locate(tokens[i]));
    return q;
}

id_range engine::suffix_range(parsed_query const& q) const {
    if (q.empty()) return id_range::invalid();
    return m_idx.dictionary.locate_prefix(q.suffix);
}

std::vector<docid_t> engine::prefix_topk(parsed_query const& q, id_range range, std::uint64_t k,
                                         search_variant variant) const {
    if (q.empty() || q.prefix_has_oov() || !range.valid() || k == 0) return {};
    auto lex = variant == search_variant::fc ? m_idx.fc_completions.locate_prefix(q.prefix, range)
                                             : m_idx.trie.locate_prefix(q.prefix, range);
    if (!lex.valid()) return {};
    auto top = topk_smallest([&](std::uint64_t pos) { return m_idx.docids[pos]; }, m_idx.docids_rmq, lex.begin,
                             lex.end, k);
    std::vector<docid_t> out;
    out.reserve(top.size());
    for (auto const& [pos, docid] : top) out.push_back(static_cast<docid_t>(docid));
    return out;
}

result_set engine::complete_prefix(std::string_view query, std::uint64_t k, search_variant variant) const {
    result_set rs;
    auto start = clock_type::now(), t = start;
    rs.parsed = parse(query);
    rs.timings.parse_us = micros_since(t);
    if (!rs.parsed.empty() && !rs.parsed.prefix_has_oov()) rs.suffix_range = suffix_range(rs.parsed);
    rs.timings.locate_us = micros_since(t);
    auto docids = prefix_topk(rs.parsed, rs.suffix_range, k, variant);
    rs.timings.search_us = micros_since(t);
    rs.results = report(docids, variant == search_variant::fc ? report_source::fc : report_source::forward);
    rs.timings.report_us = micros_since(t);
    rs.timings.total_us = std::chrono::duration<double, std::micro>(t - start).count();
    return rs;
}

result_set engine::complete_conjunctive(std::string_view query, std::uint64_t k, search_variant variant) const {
    result_set rs;
    auto start = clock_type::now(), t = start;
    rs.parsed = parse(query);
    rs.timings.parse_us = micros_since(t);
    rs.suffix_range = suffix_range(rs.parsed);
    rs.timings.locate_us = micros_since(t);

    std::vector<docid_t> docids;
    if (rs.suffix_range.valid() && k > 0) {
        // Out-of-vocabulary prefix terms are dropped from the conjunction.
        std::vector<term_id_t> terms;
        for (auto id : rs.parsed.prefix) {
            if (id != invalid_term_id) terms.push_back(id);
        }
        if (terms.empty())
            docids = single_term_topk(rs.suffix_range, k);
        else if (variant == search_variant::heap)
            docids = conjunctive_heap(terms, rs.suffix_range, k);
        else
            docids = conjunctive_forward(terms, rs.suffix_range, k,
                                         variant == search_variant::fc ? report_source::fc : report_source::forward);
    }
    rs.timings.search_us = micros_since(t);
    rs.results = report(docids, variant == search_variant::fc ? report_source::fc : report_source::forward);
    rs.timings.report_us = micros_since(t);
    rs.timings.total_us = std::chrono::duration<double, std::micro>(t - start).count();
    return rs;
}

result_set engine::dispatch(std::string_view query, std::uint64_t k, search_mode mode, search_variant variant) const {
    return mode == search_mode::prefix ? complete_prefix(query, k, variant) : complete_conjunctive(query, k, variant);
}

std::vector<docid_t> engine::conjunctive_heap(std::span<const term_id_t> prefix, id_range range, std::uint64_t k,
                                              std::vector<heap_step>* trace) const {
    std::vector<docid_t> results;
    if (prefix.empty() || !range.valid() || k == 0) return results;
    auto intersection = m_idx.inverted.intersection(prefix);

    using list_iterator = inverted_index::list_iterator;
    std::vector<list_iterator> heap;
    heap.reserve(range.size());
    for (auto t = range.begin; t <= range.end; ++t) heap.push_back(m_idx.inverted.iterator(static_cast<term_id_t>(t)));
    // Min-heap on (docid, term).
    auto greater = [](list_iterator const& a, list_iterator const& b) {
        return a.docid() != b.docid() ? a.docid() > b.docid() : a.term() > b.term();
    };
    std::make_heap(heap.begin(), heap.end(), greater);

    auto log = [&](std::uint64_t x, list_iterator const& top, heap_step::action a, std::uint64_t moved) {
        if (trace) trace->push_back({x, top.term(), top.docid(), a, moved});
    };

    while (intersection.has_next() && !heap.empty()) {
        auto x = intersection.next();
        while (!heap.empty()) {
            auto& top = heap.front();
            if (top.docid() > x) {
                log(x, top, heap_step::action::stop, 0);
                break;
            }
            if (top.docid() < x) {
                auto before = top;
                std::pop_heap(heap.begin(), heap.end(), greater);
                auto moved = heap.back().next_geq(x);
                if (moved != infinity) {
                    log(x, before, heap_step::action::advance, moved);
                    std::push_heap(heap.begin(), heap.end(), greater);
                } else {
                    log(x, before, heap_step::action::pop, moved);
                    heap.pop_back();
                }
            } else {
                log(x, top, heap_step::action::match, 0);
                results.push_back(static_cast<docid_t>(x));
                if (results.size() == k) return results;
                break;
            }
        }
    }
    return results;
}

std::vector<docid_t> engine::conjunctive_forward(std::span<const term_id_t> prefix, id_range range, std::uint64_t k,
                                                 report_source extractor) const {
    std::vector<docid_t> results;
    if (prefix.empty() || !range.valid() || k == 0) return results;
    auto intersection = m_idx.inverted.intersection(prefix);
    while (intersection.has_next()) {
        auto x = static_cast<docid_t>(intersection.next());
        bool hit;
        if (extractor == report_source::forward) {
            hit = m_idx.forward.intersects(x, range);
        } else {
            auto terms = m_idx.fc_completions.access(m_idx.docids.lexid_unchecked(x));
            hit = std::any_of(terms.begin(), terms.end(), [&](term_id_t t) { return range.contains(t); });
        }
        if (hit) {
            results.push_back(x);
            if (results.size() == k) break;
        }
    }
    return results;
}

std::vector<docid_t> engine::single_term_topk(id_range range, std::uint64_t k, single_term_stats* stats) const {
    std::vector<docid_t> results;
    if (!range.valid() || k == 0) return results;
    if (range.begin < 1 || range.end > m_idx.num_terms()) throw std::out_of_range("single_term_topk: invalid range");

    using list_iterator = inverted_index::list_iterator;
    std::vector<list_iterator> iterators;
    struct entry {
        std::uint64_t docid;
        std::uint64_t lo, hi, pos;  // a term sub-range and its RMQ position, when slot < 0
        std::int64_t slot;          // index into `iterators` otherwise
        bool operator>(entry const& o) const { return docid > o.docid; }
    };
    std::priority_queue<entry, std::vector<entry>, std::greater<>> heap;
    auto minimal = [&](std::uint64_t t) { return m_idx.inverted.minimal(static_cast<term_id_t>(t)); };
    auto push_range = [&](std::uint64_t lo, std::uint64_t hi) {
        if (lo > hi) return;
        auto m = m_idx.minimal_rmq.rmq(lo, hi);
        heap.push({minimal(m), lo, hi, m, -1});
    };
    auto emit = [&](std::uint64_t docid) {
        if (results.empty() || results.back() != docid) results.push_back(static_cast<docid_t>(docid));
    };

    push_range(range.begin, range.end);
    while (!heap.empty() && results.size() < k) {
        auto top = heap.top();
        heap.pop();
        emit(top.docid);
        if (top.slot < 0) {
            auto term = static_cast<term_id_t>(top.pos);
            iterators.push_back(m_idx.inverted.iterator(term));
            if (stats) stats->opened.push_back(term);
            auto& it = iterators.back();
            it.next();
            if (!it.exhausted())
                heap.push({it.docid(), 0, 0, 0, static_cast<std::int64_t>(iterators.size() - 1)});
            push_range(top.lo, top.pos - 1);
            push_range(top.pos + 1, top.hi);
        } else {
            auto& it = iterators[static_cast<std::size_t>(top.slot)];
            it.next();
            if (!it.exhausted()) heap.push({it.docid(), 0, 0, 0, top.slot});
        }
    }
    return results;
}

std::vector<docid_t> engine::single_term_topk_naive(id_range range, std::uint64_t k) const {
    std::vector<docid_t> results;
    if (!range.valid() || k == 0) return results;
    using list_iterator = inverted_index::list_iterator;
    std::vector<list_iterator> heap;
    heap.reserve(range.size());
    for (auto t = range.begin; t <= range.end; ++t) heap.push_back(m_idx.inverted.iterator(static_cast<term_id_t>(t)));
    auto greater = [](list_iterator const& a, list_iterator const& b) { return a.docid() > b.docid(); };
    std::make_heap(heap.begin(), heap.end(), greater);
    while (!heap.empty() && results.size() < k) {
        std::pop_heap(heap.begin(), heap.end(), greater);
        auto& it = heap.back();
        auto d = static_cast<docid_t>(it.docid());
        if (results.empty() || results.back() != d) results.push_back(d);
        it.next();
        if (it.exhausted())
            heap.pop_back();
        else
            std::push_heap(heap.begin(), heap.end(), greater);
    }
    return results;
}

std::string engine::render(std::span<const term_id_t> terms) const {
    std::string s;
    for (auto t : terms) {
        if (!s.empty()) s += ' ';
        s += m_idx.dictionary.extract(t);
    }
    return s;
}

std::vector<completion_result> engine::report(std::span<const docid_t> docids, report_source source) const {
    std::vector<completion_result> out;
    out.reserve(docids.size());
    for (auto d : docids) {
        if (d == 0 || d > m_idx.num_completions())
            throw std::out_of_range("report: unknown docid " + std::to_string(d));
        auto terms = source == report_source::forward ? m_idx.forward.extract(d)
                                                      : m_idx.fc_completions.access(m_idx.docids.lexid_of(d));
        out.push_back({d, m_idx.score(d), render(terms)});
    }
    return out;
}

}  // namespace qac
