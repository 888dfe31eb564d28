#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct run_result {
    int status;
    std::string out;
};

run_result run(std::string const& args) {
    std::string cmd = std::string(QAC_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf;
    while (auto n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

struct cli_test : ::testing::Test {
    fs::path dir = fs::temp_directory_path() / ("qac_cli_" + std::to_string(::getpid()));
    fs::path log = dir / "log.tsv";
    fs::path index = dir / "t1.idx";

    void SetUp() override {
        fs::create_directories(dir);
        std::ofstream out(log);
        for (auto const& [text, score] : qac::fixtures::table1_entries()) out << text << '\t' << score << '\n';
    }
    void TearDown() override { fs::remove_all(dir); }

    void build() { ASSERT_EQ(run("build " + log.string() + " --scores -o " + index.string()).status, 0); }
};

std::vector<std::string> lines(std::string const& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start < s.size()) {
        auto end = s.find('\n', start);
        if (end == std::string::npos) end = s.size();
        out.push_back(s.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

}  // namespace

TEST_F(cli_test, BuildPrintsStats) {
    auto r = run("build " + log.string() + " --scores -o " + index.string());
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("completions          9"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("unique terms         10"), std::string::npos) << r.out;
    EXPECT_TRUE(fs::exists(index));
}

TEST_F(cli_test, QueryConjunctive) {
    build();
    auto r = run("query " + index.string() + " 'bmw i3 s'");
    ASSERT_EQ(r.status, 0) << r.out;
    auto l = lines(r.out);
    ASSERT_EQ(l.size(), 3u) << r.out;
    EXPECT_EQ(l[0], "1\t1\t90\tbmw i3 sedan");
    EXPECT_EQ(l[1], "2\t2\t80\tbmw i3 sportback");
    EXPECT_EQ(l[2], "3\t4\t60\tbmw i3 sport");
}

TEST_F(cli_test, QueryPrefixAndSingleTerm) {
    build();
    EXPECT_EQ(run("query " + index.string() + " i3 --mode prefix").out, "");
    auto r = run("query " + index.string() + " s -k 3 --variant heap");
    auto l = lines(r.out);
    ASSERT_EQ(l.size(), 3u);
    EXPECT_EQ(l[2].substr(0, 4), "3\t3\t");
    auto t = run("query " + index.string() + " s --timings");
    EXPECT_NE(t.out.find("total"), std::string::npos);
}

TEST_F(cli_test, ErrorsExitNonzero) {
    std::ofstream(dir / "bad.tsv") << "ok\t1\nbroken\tabc\n";
    auto r = run("build " + (dir / "bad.tsv").string() + " --scores -o " + (dir / "x.idx").string());
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.out.find("line 2"), std::string::npos) << r.out;

    EXPECT_NE(run("build " + (dir / "missing.txt").string() + " -o " + (dir / "x.idx").string()).status, 0);

    std::ofstream(dir / "junk.idx") << "definitely not an index";
    auto q = run("query " + (dir / "junk.idx").string() + " a");
    EXPECT_NE(q.status, 0);
    EXPECT_NE(q.out.find("magic"), std::string::npos) << q.out;
}

TEST_F(cli_test, EmptyLogBuildsEmptyIndex) {
    std::ofstream(dir / "empty.txt").close();
    auto r = run("build " + (dir / "empty.txt").string() + " -o " + (dir / "e.idx").string());
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_EQ(run("query " + (dir / "e.idx").string() + " a").out, "");
}

TEST_F(cli_test, BenchWritesJson) {
    build();
    std::ofstream(dir / "spec.json") << R"({"samples_per_bucket": 5, "repetitions": 1})";
    auto out = dir / "bench.json";
    auto r = run("bench " + index.string() + " --spec " + (dir / "spec.json").string() +
                 " --k 3 --variants fwd,fc --out " + out.string());
    ASSERT_EQ(r.status, 0) << r.out;
    EXPECT_NE(r.out.find("conjunctive-fc"), std::string::npos);
    EXPECT_EQ(r.out.find("conjunctive-heap"), std::string::npos);
    EXPECT_TRUE(fs::exists(out));
    EXPECT_NE(run("bench " + index.string() + " --variants bogus").status, 0);
}
