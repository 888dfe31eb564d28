#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "qac/common.hpp"

namespace qac {

class fc_dictionary;

enum class scoring_mode { frequency, explicit_scores };

struct scored_completion {
    std::string text;  // whitespace-normalized query
    score_t score = 0;
    docid_t docid = 0;
};

// Deduplicated query log. `completions[d - 1]` holds docid d; docids follow
// (score descending, text ascending).
struct scored_corpus {
    std::vector<scored_completion> completions;
    std::vector<std::string> vocabulary;  // sorted, unique

    std::size_t size() const { return completions.size(); }
    scored_completion const& by_docid(docid_t d) const { return completions.at(d - 1); }
};

struct int_completion {
    std::vector<term_id_t> terms;
    docid_t docid = 0;
};

class ingest_error : public std::runtime_error {
public:
    ingest_error(std::size_t line, std::string const& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), m_line(line) {}
    std::size_t line() const { return m_line; }

private:
    std::size_t m_line;
};

// Splits on runs of ASCII whitespace; no other normalization.
std::vector<std::string_view> tokenize(std::string_view query);

std::string normalize_whitespace(std::string_view query);

// One query per line; with explicit scores each line is "query<TAB>score".
// Duplicates are summed (frequency) or last-wins (explicit). Blank lines are
// skipped. Throws ingest_error on malformed score lines.
scored_corpus ingest(std::istream& log, scoring_mode mode = scoring_mode::frequency);

// Builds a corpus from already-scored (text, score) pairs; duplicates keep the last score.
scored_corpus make_corpus(std::vector<std::pair<std::string, score_t>> const& entries);

// Completions as term-id sequences, sorted lexicographically by sequence.
std::vector<int_completion> to_int_completions(scored_corpus const& corpus, fc_dictionary const& dict);

bool lex_less(std::vector<term_id_t> const& a, std::vector<term_id_t> const& b);

}  // namespace qac
