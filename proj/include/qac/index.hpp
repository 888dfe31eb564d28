#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qac/completions.hpp"
#include "qac/corpus.hpp"
#include "qac/fc_dictionary.hpp"
#include "qac/inverted_index.hpp"
#include "qac/rmq.hpp"
#include "qac/succinct/elias_fano.hpp"

namespace qac {

struct build_options {
    std::uint64_t dictionary_bucket_size = fc_dictionary::default_bucket_size;
    std::uint64_t completions_bucket_size = fc_completion_set::default_bucket_size;
};

// Table-1 style dataset statistics kept in the META section.
struct corpus_stats {
    std::uint64_t completions = 0;
    std::uint64_t unique_terms = 0;
    std::uint64_t raw_bytes = 0;  // newline-terminated completions
    double avg_chars_per_term = 0;
    double avg_queries_per_term = 0;
    double avg_terms_per_query = 0;
    std::uint64_t dictionary_bucket_size = 0;
    std::uint64_t completions_bucket_size = 0;

    friend bool operator==(corpus_stats const&, corpus_stats const&) = default;
};

// Every structure needed by the query algorithms, immutable once built.
struct autocomplete_index {
    fc_dictionary dictionary;
    completion_trie trie;
    fc_completion_set fc_completions;
    forward_index forward;
    docid_map docids;
    succinct_rmq docids_rmq;
    inverted_index inverted;
    succinct_rmq minimal_rmq;
    succinct::elias_fano reversed_scores;  // score of docid d at position N - d
    corpus_stats stats;

    std::uint64_t num_completions() const { return docids.size(); }
    std::uint64_t num_terms() const { return dictionary.size(); }
    score_t score(docid_t d) const { return reversed_scores[num_completions() - d]; }
};

autocomplete_index build_index(scored_corpus const& corpus, build_options const& opts = {});

// Space per component in bytes.
struct space_report {
    std::uint64_t dictionary = 0;
    std::uint64_t trie = 0;
    std::uint64_t fc_completions = 0;
    std::uint64_t forward = 0;
    std::uint64_t docids = 0;
    std::uint64_t docids_rmq = 0;
    std::uint64_t inverted = 0;
    std::uint64_t minimal = 0;
    std::uint64_t minimal_rmq = 0;
    std::uint64_t scores = 0;
};
space_report space_usage(autocomplete_index const& idx);

// On-disk container: magic "QACIDX01", version, a section table of
// (name, offset, length, crc32) and the ten little-endian sections.
inline constexpr char container_magic[8] = {'Q', 'A', 'C', 'I', 'D', 'X', '0', '1'};
inline constexpr std::uint32_t container_version = 1;
inline constexpr char const* section_names[] = {"DICT", "TRIE", "FCSET", "FWD",  "DMAP",
                                                "RMQD", "IIDX", "MINL",  "RMQM", "META"};

struct section_entry {
    std::string name;
    std::uint64_t offset = 0;
    std::uint64_t length = 0;
    std::uint32_t checksum = 0;
};

std::vector<std::uint8_t> serialize(autocomplete_index const& idx);
// Throws format_error on bad magic/version, missing sections or checksum mismatch.
autocomplete_index deserialize(std::span<const std::uint8_t> bytes);
std::vector<section_entry> read_section_table(std::span<const std::uint8_t> bytes);

void save_index(autocomplete_index const& idx, std::filesystem::path const& path);
autocomplete_index load_index(std::filesystem::path const& path);

std::string stats_to_json(corpus_stats const& s);

}  // namespace qac
