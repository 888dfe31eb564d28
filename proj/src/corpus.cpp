#include "qac/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <unordered_map>

#include "qac/fc_dictionary.hpp"

namespace qac {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

scored_corpus assign_docids(std::unordered_map<std::string, score_t>&& scores) {
    scored_corpus corpus;
    corpus.completions.reserve(scores.size());
    std::set<std::string_view> vocab;
    for (auto& [text, score] : scores) corpus.completions.push_back({text, score, 0});
    std::sort(corpus.completions.begin(), corpus.completions.end(), [](auto const& a, auto const& b) {
        return a.score != b.score ? a.score > b.score : a.text < b.text;
    });
    for (std::size_t i = 0; i < corpus.completions.size(); ++i) {
        corpus.completions[i].docid = static_cast<docid_t>(i + 1);
        for (auto t : tokenize(corpus.completions[i].text)) vocab.insert(t);
    }
    corpus.vocabulary.assign(vocab.begin(), vocab.end());
    return corpus;
}

}  // namespace

std::vector<std::string_view> tokenize(std::string_view query) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < query.size()) {
        while (i < query.size() && is_space(query[i])) ++i;
        auto start = i;
        while (i < query.size() && !is_space(query[i])) ++i;
        if (i > start) out.push_back(query.substr(start, i - start));
    }
    return out;
}

std::string normalize_whitespace(std::string_view query) {
    std::string out;
    for (auto t : tokenize(query)) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

scored_corpus ingest(std::istream& log, scoring_mode mode) {
    std::unordered_map<std::string, score_t> scores;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(log, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (mode == scoring_mode::frequency) {
            auto q = normalize_whitespace(line);
            if (!q.empty()) ++scores[q];
            continue;
        }
        auto tab = line.rfind('\t');
        if (tab == std::string::npos) {
            if (normalize_whitespace(line).empty()) continue;
            throw ingest_error(line_no, "expected \"query<TAB>score\"");
        }
        auto q = normalize_whitespace(std::string_view(line).substr(0, tab));
        auto field = std::string_view(line).substr(tab + 1);
        score_t score = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), score);
        if (ec != std::errc() || ptr != field.data() + field.size() || field.empty())
            throw ingest_error(line_no, "invalid score \"" + std::string(field) + "\"");
        if (q.empty()) throw ingest_error(line_no, "empty query");
        scores[q] = score;
    }
    return assign_docids(std::move(scores));
}

scored_corpus make_corpus(std::vector<std::pair<std::string, score_t>> const& entries) {
    std::unordered_map<std::string, score_t> scores;
    for (auto const& [text, score] : entries) {
        auto q = normalize_whitespace(text);
        if (!q.empty()) scores[q] = score;
    }
    return assign_docids(std::move(scores));
}

bool lex_less(std::vector<term_id_t> const& a, std::vector<term_id_t> const& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<int_completion> to_int_completions(scored_corpus const& corpus, fc_dictionary const& dict) {
    std::vector<int_completion> out;
    out.reserve(corpus.size());
    for (auto const& c : corpus.completions) {
        int_completion ic{{}, c.docid};
        for (auto t : tokenize(c.text)) {
            auto id = dict.locate(t);
            if (id == invalid_term_id)
                throw std::logic_error("term \"" + std::string(t) + "\" missing from dictionary");
            ic.terms.push_back(id);
        }
        out.push_back(std::move(ic));
    }
    std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) { return lex_less(a.terms, b.terms); });
    return out;
}

}  // namespace qac
