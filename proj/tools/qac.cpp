// qac: build, query, benchmark and serve a query auto-completion index.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qac/bench.hpp"
#include "qac/engine.hpp"
#include "qac/index.hpp"
#include "qac/service.hpp"

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_index_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    char magic[8] = {};
    in.read(magic, 8);
    return in && std::memcmp(magic, qac::container_magic, 8) == 0;
}

qac::scored_corpus read_log(std::string const& path, bool scores) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return qac::ingest(in, scores ? qac::scoring_mode::explicit_scores : qac::scoring_mode::frequency);
}

void print_stats(qac::corpus_stats const& s, std::ostream& os) {
    os << "completions          " << s.completions << "\n"
       << "unique terms         " << s.unique_terms << "\n"
       << "raw bytes            " << s.raw_bytes << "\n"
       << std::fixed << std::setprecision(2) << "avg chars per term   " << s.avg_chars_per_term << "\n"
       << "avg queries per term " << s.avg_queries_per_term << "\n"
       << "avg terms per query  " << s.avg_terms_per_query << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"query auto-completion index tool"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "build an index from a query log (one query per line)");
    std::string build_input, build_output;
    bool build_scores = false;
    qac::build_options build_opts;
    build->add_option("input", build_input, "query log")->required();
    build->add_option("-o,--output", build_output, "index file")->required();
    build->add_flag("--scores", build_scores, "lines are query<TAB>score");
    build->add_option("--dict-bucket", build_opts.dictionary_bucket_size, "front-coding bucket size for terms")
        ->check(CLI::IsMember({4, 8, 16, 32, 64, 128, 256}));
    build->add_option("--completions-bucket", build_opts.completions_bucket_size,
                      "front-coding bucket size for completions")
        ->check(CLI::IsMember({4, 8, 16, 32, 64, 128, 256}));

    // query
    auto* query = app.add_subcommand("query", "run queries against an index");
    std::string query_index, query_mode = "conjunctive", query_variant = "fwd";
    std::vector<std::string> query_texts;
    std::uint64_t query_k = qac::engine::default_k;
    bool query_timings = false;
    query->add_option("index", query_index, "index file")->required();
    query->add_option("query", query_texts, "queries; read from stdin, one per line, when absent");
    query->add_option("-k", query_k, "number of results");
    query->add_option("--mode", query_mode, "prefix or conjunctive")->check(CLI::IsMember({"prefix", "conjunctive"}));
    query->add_option("--variant", query_variant, "heap, fwd or fc")->check(CLI::IsMember({"heap", "fwd", "fc"}));
    query->add_flag("--timings", query_timings, "print per-phase timings");

    // bench
    auto* bench = app.add_subcommand("bench", "measure latency, effectiveness and space");
    std::string bench_input, bench_spec_path, bench_out;
    std::optional<std::uint64_t> bench_seed, bench_k;
    std::vector<std::string> bench_variants;
    bool bench_scores = false, bench_synthetic = false;
    bench->add_option("input", bench_input, "index file or query log");
    bench->add_option("--spec", bench_spec_path, "JSON bench spec");
    bench->add_option("--seed", bench_seed, "sampling seed");
    bench->add_option("--k", bench_k, "number of results");
    bench->add_option("--variants", bench_variants, "conjunctive variants to time")->delimiter(',');
    bench->add_option("--out", bench_out, "write JSON records here");
    bench->add_flag("--scores", bench_scores, "query log lines are query<TAB>score");
    bench->add_flag("--synthetic", bench_synthetic, "use the built-in synthetic corpus");

    // serve
    auto* serve = app.add_subcommand("serve", "serve /complete, /healthz and /stats over HTTP");
    std::string serve_index, serve_addr = "127.0.0.1:8080";
    serve->add_option("index", serve_index, "index file")->required();
    serve->add_option("--addr", serve_addr, std::string("host:port; ") + qac::service::bind_env_var + " overrides");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) {
            auto corpus = read_log(build_input, build_scores);
            auto idx = qac::build_index(corpus, build_opts);
            qac::save_index(idx, build_output);
            print_stats(idx.stats, std::cout);
            return 0;
        }

        if (*query) {
            auto idx = qac::load_index(query_index);
            qac::engine e(idx);
            auto mode = *qac::parse_mode(query_mode);
            auto variant = *qac::parse_variant(query_variant);
            auto run = [&](std::string const& q) {
                auto rs = e.dispatch(q, query_k, mode, variant);
                for (std::size_t i = 0; i < rs.results.size(); ++i) {
                    auto const& r = rs.results[i];
                    std::cout << i + 1 << '\t' << r.docid << '\t' << r.score << '\t' << r.completion << '\n';
                }
                if (query_timings) {
                    auto const& t = rs.timings;
                    std::cerr << std::fixed << std::setprecision(2) << "parse " << t.parse_us << "us, locate "
                              << t.locate_us << "us, search " << t.search_us << "us, report " << t.report_us
                              << "us, total " << t.total_us << "us\n";
                }
            };
            if (query_texts.empty()) {
                std::string line;
                while (std::getline(std::cin, line)) run(line);
            } else {
                for (auto const& q : query_texts) run(q);
            }
            return 0;
        }

        if (*bench) {
            qac::bench::bench_spec spec;
            if (!bench_spec_path.empty()) spec = qac::bench::parse_spec(read_file(bench_spec_path));
            if (bench_seed) spec.seed = *bench_seed;
            if (bench_k) spec.k = *bench_k;
            if (!bench_variants.empty()) spec.variants = bench_variants;
            qac::bench::validate(spec);

            qac::bench::bench_report report;
            if (bench_synthetic) {
                report = qac::bench::run_bench(qac::bench::synthetic_corpus({}), spec);
            } else if (bench_input.empty()) {
                throw std::runtime_error("bench needs an input file or --synthetic");
            } else if (is_index_file(bench_input)) {
                if (spec.exclude_held_out)
                    throw std::runtime_error("exclude_held_out needs a query log, not a built index");
                report = qac::bench::run_bench(qac::load_index(bench_input), spec);
            } else {
                report = qac::bench::run_bench(read_log(bench_input, bench_scores), spec);
            }
            std::cout << qac::bench::to_table(report);
            if (!bench_out.empty()) {
                std::ofstream out(bench_out);
                if (!out) throw std::runtime_error("cannot write " + bench_out);
                out << qac::bench::to_json(report) << '\n';
            }
            return 0;
        }

        if (*serve) {
            auto idx = qac::load_index(serve_index);
            auto [host, port] = qac::service::resolve_address(serve_addr);
            qac::service::server srv(idx);
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::thread watcher([&] {
                while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
                srv.stop();
            });
            std::cerr << "serving " << idx.num_completions() << " completions on " << host << ':' << port << '\n';
            bool ok = srv.listen(host, port);
            g_stop = true;
            watcher.join();
            if (!ok) std::cerr << "qac: cannot listen on " << host << ':' << port << '\n';
            return ok ? 0 : 1;
        }
    } catch (std::exception const& e) {
        std::cerr << "qac: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
