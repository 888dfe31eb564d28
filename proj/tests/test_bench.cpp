#include <gtest/gtest.h>

#include <json.hpp>

#include "qac/bench.hpp"
#include "support.hpp"

using namespace qac;
using namespace qac::bench;

TEST(MakeQuery, Retention) {
    EXPECT_EQ(make_query("bmw i3 sedan", 0), "bmw i3 s");
    EXPECT_EQ(make_query("bmw i3 sedan", 25), "bmw i3 se");  // ceil(1.25)
    EXPECT_EQ(make_query("bmw i3 sedan", 50), "bmw i3 sed");
    EXPECT_EQ(make_query("bmw i3 sedan", 75), "bmw i3 seda");
    EXPECT_EQ(make_query("sedan", 100), "sedan");
    EXPECT_EQ(make_query("a", 0), "a");
    EXPECT_EQ(make_query("  x   yz ", 50), "x y");
}

TEST(Effectiveness, WorkedExample) {
    auto pct = effectiveness({182, 203, 344, 345}, {123, 182, 198, 203, 344, 345});
    ASSERT_TRUE(pct);
    EXPECT_DOUBLE_EQ(*pct, 50.0);
    EXPECT_DOUBLE_EQ(*effectiveness({5, 5, 9}, {9, 5, 5}), 0.0);
    EXPECT_DOUBLE_EQ(*effectiveness({}, {}), 0.0);
    EXPECT_FALSE(effectiveness({}, {7}).has_value());
    // Multisets: a repeated score counts once per occurrence.
    EXPECT_EQ(multiset_difference({4, 4, 4}, {4}), 2u);
}

TEST(Spec, ParseAndValidate) {
    auto spec = parse_spec(R"({"k": 5, "variants": ["fwd"], "seed": 9, "retentions": [0, 50]})");
    EXPECT_EQ(spec.k, 5u);
    EXPECT_EQ(spec.variants, (std::vector<std::string>{"fwd"}));
    EXPECT_EQ(spec.retentions, (std::vector<unsigned>{0, 50}));
    EXPECT_THROW(parse_spec(R"({"variants": ["trie"]})"), std::invalid_argument);
    EXPECT_THROW(parse_spec(R"({"retentions": [10]})"), std::invalid_argument);
    EXPECT_THROW(parse_spec(R"({"bogus": 1})"), std::invalid_argument);
    EXPECT_THROW(parse_spec("not json"), std::invalid_argument);
}

TEST(Sampling, DeterministicAndBucketed) {
    auto entries = fixtures::random_entries(12, {1500, 300, 9});
    std::vector<std::string> texts;
    for (auto const& e : entries) texts.push_back(e.first);
    bench_spec spec;
    spec.samples_per_bucket = 20;
    auto a = sample_queries(texts, spec), b = sample_queries(texts, spec);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].text, b[i].text);
    for (auto const& q : a) {
        auto n = tokenize(q.source).size();
        if (q.bucket == 7)
            EXPECT_GE(n, 7u);
        else
            EXPECT_EQ(n, q.bucket);
        EXPECT_EQ(q.text, make_query(q.source, q.retention));
    }
    spec.seed = 13;
    auto c = sample_queries(texts, spec);
    bool differs = false;
    for (std::size_t i = 0; i < std::min(a.size(), c.size()); ++i) differs |= a[i].text != c[i].text;
    EXPECT_TRUE(differs);
}

TEST(RunBench, Table1PrefixResults) {
    bench_spec spec;
    spec.k = 3;
    spec.samples_per_bucket = 10;
    spec.repetitions = 1;
    spec.keep_results = true;
    auto idx = build_index(fixtures::table1_corpus());
    auto report = run_bench(idx, spec);
    bool found = false;
    for (auto const& q : report.queries) {
        if (q.query == "bm") {
            found = true;
            EXPECT_EQ(q.prefix, (std::vector<docid_t>{1, 2, 4}));
        }
    }
    EXPECT_TRUE(found);
    EXPECT_FALSE(report.timings.empty());
    auto j = nlohmann::json::parse(to_json(report));
    EXPECT_EQ(j["completions"], 9);
    EXPECT_NE(to_table(report).find("conjunctive-heap"), std::string::npos);
    for (auto const& e : report.effectiveness) EXPECT_GE(e.mean_percentage, 0.0);
}

TEST(RunBench, EmptyCorpus) {
    bench_spec spec;
    auto report = run_bench(make_corpus({}), spec);
    EXPECT_TRUE(report.empty());
    for (auto const& s : report.space) EXPECT_EQ(s.bytes_per_completion, 0.0);
}

TEST(RunBench, HeldOutQueriesExcluded) {
    auto entries = fixtures::random_entries(14, {600, 100, 4});
    bench_spec spec;
    spec.samples_per_bucket = 5;
    spec.repetitions = 1;
    spec.exclude_held_out = true;
    auto report = run_bench(make_corpus(entries), spec);
    std::uint64_t sampled = 0;
    std::set<std::string> sources;
    std::vector<std::string> texts;
    for (auto const& e : entries) texts.push_back(e.first);
    for (auto const& q : sample_queries(texts, spec)) sources.insert(q.source);
    sampled = sources.size();
    EXPECT_EQ(report.completions, entries.size() - sampled);
}

TEST(RunBench, UnknownVariantRejected) {
    bench_spec spec;
    spec.variants = {"fwd", "nope"};
    EXPECT_THROW(run_bench(fixtures::table1_corpus(), spec), std::invalid_argument);
}

TEST(Synthetic, SharedPrefixVocabulary) {
    synthetic_params p;
    p.completions = 5000;
    p.shared_prefix_terms = 1200;
    p.other_terms = 800;
    auto c = synthetic_corpus(p);
    EXPECT_EQ(c.size(), 5000u);
    std::size_t shared = 0;
    for (auto const& t : c.vocabulary) shared += t[0] == 's';
    EXPECT_EQ(shared, 1200u);
    auto again = synthetic_corpus(p);
    EXPECT_EQ(again.completions.front().text, c.completions.front().text);
}
