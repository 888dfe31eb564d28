#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qac/corpus.hpp"
#include "qac/engine.hpp"
#include "qac/index.hpp"

namespace qac::bench {

// Keeps every token but the last; the last is cut to
// ceil(retention / 100 * length) characters, never fewer than one.
std::string make_query(std::string_view completion, unsigned retention);

// |S_c \ S_p| / |S_p| * 100 over score multisets. Zero when both are empty,
// nullopt when only S_p is empty.
std::optional<double> effectiveness(std::vector<score_t> prefix_scores, std::vector<score_t> conjunctive_scores);
// Size of the multiset difference S_c \ S_p.
std::uint64_t multiset_difference(std::vector<score_t> a, std::vector<score_t> b);

struct bench_spec {
    // Term-count buckets; the last one also takes every longer completion.
    std::vector<unsigned> buckets = {1, 2, 3, 4, 5, 6, 7};
    std::vector<unsigned> retentions = {0, 25, 50, 75};
    std::uint64_t samples_per_bucket = 1000;
    std::uint64_t k = 10;
    std::vector<std::string> variants = {"heap", "fwd", "fc"};
    std::uint64_t seed = 42;
    std::uint64_t repetitions = 5;
    bool exclude_held_out = false;
    bool keep_results = false;  // record per-query result sets in the report
};

// Throws std::invalid_argument on unknown keys' values (bad variants,
// retentions outside {0,25,50,75}, empty buckets).
bench_spec parse_spec(std::string_view json);
void validate(bench_spec const& spec);

struct cell_timing {
    unsigned bucket = 0;
    unsigned retention = 0;
    std::string algorithm;  // "prefix" or "conjunctive-<variant>"
    std::uint64_t queries = 0;
    double mean_us = 0;
};

struct cell_effectiveness {
    unsigned bucket = 0;
    unsigned retention = 0;
    std::uint64_t queries = 0;
    std::uint64_t prefix_results = 0;  // sum of |S_p|
    std::uint64_t better_results = 0;  // sum of |S_c \ S_p|
    std::uint64_t undefined = 0;       // queries with empty S_p and non-empty S_c
    double mean_percentage = 0;        // over the queries where it is defined
};

struct space_row {
    std::string component;
    std::uint64_t bytes = 0;
    double bytes_per_completion = 0;
};

struct query_record {
    unsigned bucket = 0;
    unsigned retention = 0;
    std::string query;
    std::vector<docid_t> prefix;
    std::vector<docid_t> conjunctive;
};

struct bench_report {
    std::uint64_t completions = 0;
    std::vector<cell_timing> timings;
    std::vector<cell_effectiveness> effectiveness;
    std::vector<space_row> space;
    std::vector<query_record> queries;

    bool empty() const { return timings.empty() && effectiveness.empty(); }
};

// Queries sampled per (bucket, retention), deterministic in spec.seed.
struct sampled_query {
    unsigned bucket;
    unsigned retention;
    std::string text;
    std::string source;  // completion it was made from
};
std::vector<sampled_query> sample_queries(std::vector<std::string> const& completions, bench_spec const& spec);

bench_report run_bench(autocomplete_index const& index, bench_spec const& spec);
// Builds the index itself, dropping the sampled completions first when
// spec.exclude_held_out is set.
bench_report run_bench(scored_corpus const& corpus, bench_spec const& spec, build_options const& opts = {});

std::string to_json(bench_report const& r);
std::string to_table(bench_report const& r);

struct synthetic_params {
    std::uint64_t completions = 100000;
    std::uint64_t shared_prefix_terms = 12000;  // all start with `shared_prefix`
    std::uint64_t other_terms = 8000;
    char shared_prefix = 's';
    unsigned max_terms = 6;
    std::uint64_t seed = 7;
};
scored_corpus synthetic_corpus(synthetic_params const& p);

}  // namespace qac::bench
