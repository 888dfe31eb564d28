#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qac/common.hpp"
#include "qac/index.hpp"

namespace qac {

enum class search_mode { prefix, conjunctive };

// Conjunctive-search strategy. `heap` probes the inverted lists of the
// suffix range; `fwd` and `fc` check each intersection candidate's terms,
// extracted from the forward index or the front-coded completions.
enum class search_variant { heap, fwd, fc };

std::optional<search_mode> parse_mode(std::string_view s);
std::optional<search_variant> parse_variant(std::string_view s);
char const* to_string(search_mode m);
char const* to_string(search_variant v);

struct parsed_query {
    std::vector<term_id_t> prefix;  // invalid_term_id marks out-of-vocabulary terms
    std::string suffix;             // empty when the query ends with whitespace
    std::string raw;
    std::size_t num_tokens = 0;

    bool empty() const { return num_tokens == 0; }
    bool prefix_has_oov() const;
};

struct query_timings {
    double parse_us = 0, locate_us = 0, search_us = 0, report_us = 0, total_us = 0;
};

struct completion_result {
    docid_t docid = 0;
    score_t score = 0;
    std::string completion;

    friend bool operator==(completion_result const&, completion_result const&) = default;
};

struct result_set {
    parsed_query parsed;
    id_range suffix_range = id_range::invalid();
    std::vector<completion_result> results;
    query_timings timings;

    std::vector<docid_t> docids() const;
};

// One inner-loop iteration of the heap-based conjunctive search.
struct heap_step {
    enum class action { match, advance, pop, stop };
    std::uint64_t candidate;  // intersection docid being checked
    term_id_t term;           // list at the top of the heap
    std::uint64_t top;        // its current docid
    action what;
    std::uint64_t moved_to;   // NextGeq result for advance/pop

    std::string to_string() const;
};

struct single_term_stats {
    std::vector<term_id_t> opened;  // lists whose iterator was instantiated, in order
};

enum class report_source { forward, fc };

class engine {
public:
    static constexpr std::uint64_t default_k = 10;

    explicit engine(autocomplete_index const& idx) : m_idx(idx) {}

    autocomplete_index const& index() const { return m_idx; }

    parsed_query parse(std::string_view query) const;

    // Term-id range of the suffix; the empty suffix spans every term.
    id_range suffix_range(parsed_query const& q) const;

    result_set complete_prefix(std::string_view query, std::uint64_t k = default_k,
                               search_variant variant = search_variant::fwd) const;
    result_set complete_conjunctive(std::string_view query, std::uint64_t k = default_k,
                                    search_variant variant = search_variant::fwd) const;
    result_set dispatch(std::string_view query, std::uint64_t k, search_mode mode, search_variant variant) const;

    // Top-k docids of the completions prefixed by the parsed query, via
    // LocatePrefix on the trie (heap/fwd) or the FC set (fc), then RMQ.
    std::vector<docid_t> prefix_topk(parsed_query const& q, id_range range, std::uint64_t k,
                                     search_variant variant = search_variant::fwd) const;

    std::vector<docid_t> conjunctive_heap(std::span<const term_id_t> prefix, id_range range, std::uint64_t k,
                                          std::vector<heap_step>* trace = nullptr) const;
    std::vector<docid_t> conjunctive_forward(std::span<const term_id_t> prefix, id_range range, std::uint64_t k,
                                             report_source extractor) const;

    // k smallest docids in the union of the lists in `range`, via RMQ over
    // the minimal array; a list's iterator is opened only when one of its
    // docids is reported.
    std::vector<docid_t> single_term_topk(id_range range, std::uint64_t k, single_term_stats* stats = nullptr) const;

    // Baseline: one iterator per list in `range`, merged with a heap.
    std::vector<docid_t> single_term_topk_naive(id_range range, std::uint64_t k) const;

    std::vector<completion_result> report(std::span<const docid_t> docids,
                                          report_source source = report_source::forward) const;

    std::string render(std::span<const term_id_t> terms) const;

private:
    autocomplete_index const& m_idx;
};

}  // namespace qac
