#pragma once

// Fixtures and brute-force oracles shared by the unit tests and the
// acceptance runner. The oracles work on raw strings only.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qac/bench.hpp"
#include "qac/corpus.hpp"
#include "qac/engine.hpp"
#include "qac/index.hpp"

namespace qac::fixtures {

// The nine completions of the running example; docid d gets score 100 - 10d.
inline std::vector<std::pair<std::string, score_t>> table1_entries() {
    return {{"bmw i3 sedan", 90}, {"bmw i3 sportback", 80}, {"audi q8 sedan", 70},
            {"bmw i3 sport", 60}, {"bmw x1", 50},           {"audi a3 sport", 40},
            {"bmw i8 sport", 30}, {"bmw", 20},              {"audi", 10}};
}

inline scored_corpus table1_corpus() { return make_corpus(table1_entries()); }

inline std::vector<std::string> split_ws(std::string const& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

struct oracle_result {
    std::string text;
    score_t score;
    friend bool operator==(oracle_result const&, oracle_result const&) = default;
};

// Brute-force reference over (text, score) pairs with unique texts.
class brute_force {
public:
    explicit brute_force(std::vector<std::pair<std::string, score_t>> entries) : m_entries(std::move(entries)) {
        std::sort(m_entries.begin(), m_entries.end(), [](auto const& a, auto const& b) {
            return a.second != b.second ? a.second > b.second : a.first < b.first;
        });
        for (auto const& e : m_entries) {
            m_tokens.push_back(split_ws(e.first));
            for (auto const& t : m_tokens.back()) m_vocab.insert(t);
        }
    }

    struct split_query {
        std::vector<std::string> prefix;
        std::string suffix;
        bool empty = true;
    };

    static split_query split(std::string const& q) {
        split_query s;
        auto toks = split_ws(q);
        if (toks.empty()) return s;
        s.empty = false;
        bool trailing = std::isspace(static_cast<unsigned char>(q.back()));
        if (!trailing) {
            s.suffix = toks.back();
            toks.pop_back();
        }
        s.prefix = toks;
        return s;
    }

    std::vector<oracle_result> prefix_search(std::string const& q, std::size_t k) const {
        auto s = split(q);
        std::vector<oracle_result> out;
        if (s.empty) return out;
        for (std::size_t i = 0; i < m_entries.size() && out.size() < k; ++i) {
            auto const& toks = m_tokens[i];
            if (toks.size() <= s.prefix.size()) continue;
            if (!std::equal(s.prefix.begin(), s.prefix.end(), toks.begin())) continue;
            if (toks[s.prefix.size()].rfind(s.suffix, 0) != 0) continue;
            out.push_back({m_entries[i].first, m_entries[i].second});
        }
        return out;
    }

    std::vector<oracle_result> conjunctive_search(std::string const& q, std::size_t k) const {
        auto s = split(q);
        std::vector<oracle_result> out;
        if (s.empty) return out;
        bool suffix_known = std::any_of(m_vocab.begin(), m_vocab.end(),
                                        [&](std::string const& v) { return v.rfind(s.suffix, 0) == 0; });
        if (!suffix_known) return out;
        std::vector<std::string> required;
        for (auto const& p : s.prefix)
            if (m_vocab.count(p)) required.push_back(p);
        for (std::size_t i = 0; i < m_entries.size() && out.size() < k; ++i) {
            auto const& toks = m_tokens[i];
            bool all = std::all_of(required.begin(), required.end(), [&](std::string const& p) {
                return std::find(toks.begin(), toks.end(), p) != toks.end();
            });
            if (!all) continue;
            bool suffix_hit = std::any_of(toks.begin(), toks.end(),
                                          [&](std::string const& t) { return t.rfind(s.suffix, 0) == 0; });
            if (suffix_hit) out.push_back({m_entries[i].first, m_entries[i].second});
        }
        return out;
    }

    std::vector<std::pair<std::string, score_t>> const& entries() const { return m_entries; }

private:
    std::vector<std::pair<std::string, score_t>> m_entries;  // score desc, text asc
    std::vector<std::vector<std::string>> m_tokens;
    std::set<std::string> m_vocab;
};

inline std::vector<oracle_result> as_oracle(result_set const& rs) {
    std::vector<oracle_result> out;
    for (auto const& r : rs.results) out.push_back({r.completion, r.score});
    return out;
}

struct random_corpus_params {
    std::size_t max_completions = 2000;
    std::size_t max_vocab = 500;
    unsigned max_terms = 7;
};

// Small alphabet and short words, so terms share prefixes and suffix
// ranges hold several ids.
inline std::vector<std::pair<std::string, score_t>> random_entries(std::uint64_t seed,
                                                                   random_corpus_params p = {}) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
    };
    auto vocab_size = uniform(1, p.max_vocab);
    std::set<std::string> vocab_set;
    for (std::size_t attempts = 0; vocab_set.size() < vocab_size && attempts < 20 * vocab_size; ++attempts) {
        std::string w(uniform(1, 5), ' ');
        for (auto& c : w) c = static_cast<char>('a' + uniform(0, 5));
        vocab_set.insert(w);
    }
    std::vector<std::string> vocab(vocab_set.begin(), vocab_set.end());
    auto n = uniform(1, p.max_completions);
    auto max_score = uniform(1, 3) == 1 ? 5 : 1000;  // sometimes many ties
    std::set<std::string> seen;
    std::vector<std::pair<std::string, score_t>> entries;
    for (std::size_t attempts = 0; entries.size() < n && attempts < 10 * n; ++attempts) {
        auto len = uniform(1, p.max_terms);
        std::string s;
        for (std::size_t i = 0; i < len; ++i) {
            if (i) s += ' ';
            s += vocab[uniform(0, vocab.size() - 1)];
        }
        if (seen.insert(s).second) entries.emplace_back(s, uniform(1, max_score));
    }
    return entries;
}

// Benchmark-style queries at every retention level plus edge cases.
inline std::vector<std::string> random_queries(std::vector<std::pair<std::string, score_t>> const& entries,
                                               std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
    };
    static constexpr unsigned retentions[] = {0, 25, 50, 75, 100};
    std::vector<std::string> out;
    while (out.size() < count) {
        auto const& src = entries[uniform(0, entries.size() - 1)].first;
        auto r = retentions[uniform(0, 4)];
        auto q = bench::make_query(src, r);
        switch (uniform(0, 9)) {
            case 0: q += ' '; break;                                  // empty suffix
            case 1: q = "qqq " + q; break;                            // out-of-vocabulary prefix term
            case 2: q = split_ws(src).back().substr(0, 1); break;      // single character
            case 3: q += " zz"; break;                                // suffix matching nothing
            default: break;
        }
        out.push_back(q);
    }
    return out;
}

}  // namespace qac::fixtures
