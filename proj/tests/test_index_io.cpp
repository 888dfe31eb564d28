#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>

#include "qac/index.hpp"
#include "support.hpp"

using namespace qac;

namespace {

std::vector<std::uint8_t> table1_bytes() { return serialize(build_index(fixtures::table1_corpus())); }

}  // namespace

TEST(Container, HeaderAndSections) {
    auto bytes = table1_bytes();
    ASSERT_GE(bytes.size(), 16u);
    EXPECT_EQ(std::memcmp(bytes.data(), "QACIDX01", 8), 0);
    auto table = read_section_table(bytes);
    ASSERT_EQ(table.size(), 10u);
    std::vector<std::string> names;
    for (auto const& e : table) names.push_back(e.name);
    EXPECT_EQ(names, (std::vector<std::string>{"DICT", "TRIE", "FCSET", "FWD", "DMAP", "RMQD", "IIDX", "MINL",
                                               "RMQM", "META"}));
    EXPECT_EQ(table.back().offset + table.back().length, bytes.size());
}

TEST(Container, MetaCarriesStats) {
    auto idx = deserialize(table1_bytes());
    EXPECT_EQ(idx.stats.completions, 9u);
    EXPECT_EQ(idx.stats.unique_terms, 10u);
    EXPECT_NEAR(idx.stats.avg_terms_per_query, 22.0 / 9.0, 1e-9);
    EXPECT_EQ(idx.score(1), 90u);
    EXPECT_EQ(idx.score(9), 10u);
}

TEST(Container, RejectsCorruption) {
    auto good = table1_bytes();

    auto bad_magic = good;
    bad_magic[0] = 'X';
    EXPECT_THROW(deserialize(bad_magic), format_error);

    auto bad_version = good;
    bad_version[8] = 9;
    EXPECT_THROW(deserialize(bad_version), format_error);

    auto flipped = good;
    flipped[flipped.size() - 3] ^= 0x40;
    EXPECT_THROW(deserialize(flipped), format_error);

    auto truncated = good;
    truncated.resize(good.size() / 2);
    EXPECT_THROW(deserialize(truncated), format_error);

    // Rename a section so one required name goes missing.
    auto renamed = good;
    std::memcpy(renamed.data() + 16, "XXXX", 4);
    EXPECT_THROW(deserialize(renamed), format_error);

    std::vector<std::uint8_t> tiny = {1, 2, 3};
    EXPECT_THROW(deserialize(tiny), format_error);
}

TEST(Container, FileRoundTripReplaysQueries) {
    auto entries = fixtures::random_entries(5, {800, 200, 6});
    auto idx = build_index(make_corpus(entries));
    auto path = std::filesystem::temp_directory_path() / "qac_io_test.idx";
    save_index(idx, path);
    auto loaded = load_index(path);
    std::filesystem::remove(path);
    EXPECT_EQ(serialize(loaded), serialize(idx));
    engine a(idx), b(loaded);
    for (auto const& q : fixtures::random_queries(entries, 3, 200)) {
        for (auto mode : {search_mode::prefix, search_mode::conjunctive}) {
            for (auto v : {search_variant::heap, search_variant::fwd, search_variant::fc}) {
                ASSERT_EQ(a.dispatch(q, 10, mode, v).results, b.dispatch(q, 10, mode, v).results) << q;
            }
        }
    }
    EXPECT_THROW(load_index("/nonexistent/dir/x.idx"), std::runtime_error);
}

TEST(Container, EmptyIndexRoundTrips) {
    auto idx = build_index(make_corpus({}));
    auto loaded = deserialize(serialize(idx));
    EXPECT_EQ(loaded.num_completions(), 0u);
    EXPECT_EQ(loaded.num_terms(), 0u);
}

TEST(Container, SpaceReportCoversComponents) {
    auto idx = build_index(make_corpus(fixtures::random_entries(6)));
    auto s = space_usage(idx);
    EXPECT_GT(s.dictionary, 0u);
    EXPECT_GT(s.trie, 0u);
    EXPECT_GT(s.fc_completions, 0u);
    EXPECT_GT(s.forward, 0u);
    EXPECT_GT(s.inverted, 0u);
    EXPECT_GT(s.docids_rmq, 0u);
    EXPECT_GT(s.minimal_rmq, 0u);
}
