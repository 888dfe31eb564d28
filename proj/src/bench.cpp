#include "qac/bench.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qac::bench {

namespace {

using json = nlohmann::json;

constexpr unsigned allowed_retentions[] = {0, 25, 50, 75};

unsigned bucket_of(std::size_t num_terms, std::vector<unsigned> const& buckets) {
    // The largest bucket collects everything at or above it.
    if (num_terms >= buckets.back()) return buckets.back();
    return std::find(buckets.begin(), buckets.end(), num_terms) != buckets.end() ? static_cast<unsigned>(num_terms)
                                                                                 : 0;
}

std::vector<score_t> scores_of(autocomplete_index const& idx, std::vector<docid_t> const& docids) {
    std::vector<score_t> out;
    out.reserve(docids.size());
    for (auto d : docids) out.push_back(idx.score(d));
    return out;
}

std::vector<std::string> all_completions(autocomplete_index const& idx) {
    engine e(idx);
    std::vector<std::string> out;
    out.reserve(idx.num_completions());
    for (docid_t d = 1; d <= idx.num_completions(); ++d) out.push_back(e.render(idx.forward.extract(d)));
    return out;
}

bench_report run_queries(autocomplete_index const& idx, std::vector<sampled_query> const& queries,
                         bench_spec const& spec) {
    bench_report report;
    report.completions = idx.num_completions();

    auto space = space_usage(idx);
    auto n = idx.num_completions();
    auto row = [&](char const* name, std::uint64_t bytes) {
        report.space.push_back({name, bytes, n ? double(bytes) / double(n) : 0.0});
    };
    row("dictionary", space.dictionary);
    row("completions", space.trie);
    row("fc_completions", space.fc_completions);
    row("docids", space.docids);
    row("rmq", space.docids_rmq + space.minimal_rmq);
    row("inverted", space.inverted + space.minimal);
    row("forward", space.forward);
    row("scores", space.scores);

    if (queries.empty()) return report;

    engine e(idx);
    std::map<std::pair<unsigned, unsigned>, std::vector<std::string>> cells;
    for (auto const& q : queries) cells[{q.bucket, q.retention}].push_back(q.text);

    struct algorithm {
        std::string name;
        search_mode mode;
        search_variant variant;
    };
    std::vector<algorithm> algorithms = {{"prefix", search_mode::prefix, search_variant::fwd}};
    for (auto const& v : spec.variants)
        algorithms.push_back({"conjunctive-" + v, search_mode::conjunctive, *parse_variant(v)});

    for (auto const& [key, texts] : cells) {
        auto [bucket, retention] = key;
        for (auto const& alg : algorithms) {
            auto run_once = [&] {
                std::uint64_t sink = 0;
                for (auto const& t : texts) {
                    auto parsed = e.parse(t);
                    auto range = e.suffix_range(parsed);
                    std::vector<docid_t> r;
                    if (alg.mode == search_mode::prefix) {
                        r = e.prefix_topk(parsed, range, spec.k, alg.variant);
                    } else if (range.valid()) {
                        std::vector<term_id_t> terms;
                        for (auto id : parsed.prefix)
                            if (id != invalid_term_id) terms.push_back(id);
                        if (terms.empty())
                            r = e.single_term_topk(range, spec.k);
                        else if (alg.variant == search_variant::heap)
                            r = e.conjunctive_heap(terms, range, spec.k);
                        else
                            r = e.conjunctive_forward(terms, range, spec.k,
                                                      alg.variant == search_variant::fc ? report_source::fc
                                                                                        : report_source::forward);
                    }
                    sink += r.size();
                }
                return sink;
            };
            run_once();  // warm-up
            auto start = std::chrono::steady_clock::now();
            volatile std::uint64_t sink = 0;
            for (std::uint64_t rep = 0; rep < spec.repetitions; ++rep) sink = sink + run_once();
            double us = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
            auto reps = std::max<std::uint64_t>(spec.repetitions, 1);
            report.timings.push_back({bucket, retention, alg.name, texts.size(), us / double(reps * texts.size())});
        }

        cell_effectiveness eff{bucket, retention, texts.size()};
        double sum = 0;
        std::uint64_t defined = 0;
        for (auto const& t : texts) {
            auto p = e.complete_prefix(t, spec.k).docids();
            auto c = e.complete_conjunctive(t, spec.k).docids();
            auto sp = scores_of(idx, p), sc = scores_of(idx, c);
            eff.prefix_results += sp.size();
            eff.better_results += multiset_difference(sc, sp);
            if (auto pct = effectiveness(sp, sc)) {
                sum += *pct;
                ++defined;
            } else {
                ++eff.undefined;
            }
            if (spec.keep_results) report.queries.push_back({bucket, retention, t, std::move(p), std::move(c)});
        }
        eff.mean_percentage = defined ? sum / double(defined) : 0.0;
        report.effectiveness.push_back(eff);
    }
    return report;
}

}  // namespace

std::string make_query(std::string_view completion, unsigned retention) {
    auto tokens = tokenize(completion);
    if (tokens.empty()) return {};
    std::string out;
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        out += tokens[i];
        out += ' ';
    }
    auto last = tokens.back();
    auto keep = (std::uint64_t(retention) * last.size() + 99) / 100;
    keep = std::clamp<std::uint64_t>(keep, 1, last.size());
    out += last.substr(0, keep);
    return out;
}

std::uint64_t multiset_difference(std::vector<score_t> a, std::vector<score_t> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<score_t> diff;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(diff));
    return diff.size();
}

std::optional<double> effectiveness(std::vector<score_t> prefix_scores, std::vector<score_t> conjunctive_scores) {
    if (prefix_scores.empty()) {
        if (conjunctive_scores.empty()) return 0.0;
        return std::nullopt;
    }
    auto better = multiset_difference(std::move(conjunctive_scores), prefix_scores);
    return double(better) / double(prefix_scores.size()) * 100.0;
}

void validate(bench_spec const& spec) {
    if (spec.buckets.empty()) throw std::invalid_argument("bench spec: no term-count buckets");
    if (!std::is_sorted(spec.buckets.begin(), spec.buckets.end()) || spec.buckets.front() == 0)
        throw std::invalid_argument("bench spec: buckets must be ascending and positive");
    for (auto r : spec.retentions) {
        if (std::find(std::begin(allowed_retentions), std::end(allowed_retentions), r) == std::end(allowed_retentions))
            throw std::invalid_argument("bench spec: retention " + std::to_string(r) + " not in {0,25,50,75}");
    }
    for (auto const& v : spec.variants) {
        if (!parse_variant(v)) throw std::invalid_argument("bench spec: unknown variant '" + v + "'");
    }
    if (spec.k == 0) throw std::invalid_argument("bench spec: k must be positive");
}

bench_spec parse_spec(std::string_view text) {
    bench_spec spec;
    json j;
    try {
        j = json::parse(text);
    } catch (json::exception const& e) {
        throw std::invalid_argument(std::string("bench spec: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("bench spec: expected a JSON object");
    static const std::set<std::string> known = {"buckets", "retentions", "samples_per_bucket", "k",
                                                "variants", "seed", "repetitions", "exclude_held_out",
                                                "keep_results"};
    for (auto const& [key, _] : j.items()) {
        if (!known.count(key)) throw std::invalid_argument("bench spec: unknown key '" + key + "'");
    }
    try {
        if (j.contains("buckets")) spec.buckets = j["buckets"].get<std::vector<unsigned>>();
        if (j.contains("retentions")) spec.retentions = j["retentions"].get<std::vector<unsigned>>();
        if (j.contains("samples_per_bucket")) spec.samples_per_bucket = j["samples_per_bucket"];
        if (j.contains("k")) spec.k = j["k"];
        if (j.contains("variants")) spec.variants = j["variants"].get<std::vector<std::string>>();
        if (j.contains("seed")) spec.seed = j["seed"];
        if (j.contains("repetitions")) spec.repetitions = j["repetitions"];
        if (j.contains("exclude_held_out")) spec.exclude_held_out = j["exclude_held_out"];
        if (j.contains("keep_results")) spec.keep_results = j["keep_results"];
    } catch (json::exception const& e) {
        throw std::invalid_argument(std::string("bench spec: ") + e.what());
    }
    validate(spec);
    return spec;
}

std::vector<sampled_query> sample_queries(std::vector<std::string> const& completions, bench_spec const& spec) {
    validate(spec);
    std::map<unsigned, std::vector<std::size_t>> by_bucket;
    for (std::size_t i = 0; i < completions.size(); ++i) {
        auto b = bucket_of(tokenize(completions[i]).size(), spec.buckets);
        if (b) by_bucket[b].push_back(i);
    }
    std::mt19937_64 rng(spec.seed);
    std::vector<sampled_query> out;
    for (auto b : spec.buckets) {
        auto& pool = by_bucket[b];
        std::shuffle(pool.begin(), pool.end(), rng);
        auto take = std::min<std::size_t>(pool.size(), spec.samples_per_bucket);
        for (auto r : spec.retentions) {
            for (std::size_t i = 0; i < take; ++i) {
                auto const& src = completions[pool[i]];
                out.push_back({b, r, make_query(src, r), src});
            }
        }
    }
    return out;
}

bench_report run_bench(autocomplete_index const& index, bench_spec const& spec) {
    auto queries = sample_queries(all_completions(index), spec);
    return run_queries(index, queries, spec);
}

bench_report run_bench(scored_corpus const& corpus, bench_spec const& spec, build_options const& opts) {
    std::vector<std::string> texts;
    texts.reserve(corpus.size());
    for (auto const& c : corpus.completions) texts.push_back(c.text);
    auto queries = sample_queries(texts, spec);
    if (!spec.exclude_held_out) return run_queries(build_index(corpus, opts), queries, spec);

    std::set<std::string> held_out;
    for (auto const& q : queries) held_out.insert(q.source);
    std::vector<std::pair<std::string, score_t>> kept;
    for (auto const& c : corpus.completions) {
        if (!held_out.count(c.text)) kept.emplace_back(c.text, c.score);
    }
    return run_queries(build_index(make_corpus(kept), opts), queries, spec);
}

std::string to_json(bench_report const& r) {
    json j;
    j["completions"] = r.completions;
    j["timings"] = json::array();
    for (auto const& t : r.timings)
        j["timings"].push_back({{"bucket", t.bucket},
                                {"retention", t.retention},
                                {"algorithm", t.algorithm},
                                {"queries", t.queries},
                                {"mean_us", t.mean_us}});
    j["effectiveness"] = json::array();
    for (auto const& e : r.effectiveness)
        j["effectiveness"].push_back({{"bucket", e.bucket},
                                      {"retention", e.retention},
                                      {"queries", e.queries},
                                      {"prefix_results", e.prefix_results},
                                      {"better_results", e.better_results},
                                      {"undefined", e.undefined},
                                      {"mean_percentage", e.mean_percentage}});
    j["space"] = json::array();
    for (auto const& s : r.space)
        j["space"].push_back({{"component", s.component}, {"bytes", s.bytes}, {"bpc", s.bytes_per_completion}});
    if (!r.queries.empty()) {
        j["queries"] = json::array();
        for (auto const& q : r.queries)
            j["queries"].push_back({{"bucket", q.bucket},
                                    {"retention", q.retention},
                                    {"query", q.query},
                                    {"prefix", q.prefix},
                                    {"conjunctive", q.conjunctive}});
    }
    return j.dump(2);
}

std::string to_table(bench_report const& r) {
    std::ostringstream os;
    auto bucket_name = [&](unsigned b) {
        return std::to_string(b) + (!r.timings.empty() && b == r.timings.back().bucket ? "+" : "");
    };
    os << "completions: " << r.completions << "\n\n";
    os << "latency (us/query)\n";
    os << std::left << std::setw(8) << "terms" << std::setw(6) << "ret%" << std::setw(20) << "algorithm"
       << std::right << std::setw(12) << "mean_us" << "\n";
    os << std::fixed << std::setprecision(2);
    for (auto const& t : r.timings)
        os << std::left << std::setw(8) << bucket_name(t.bucket) << std::setw(6) << t.retention << std::setw(20)
           << t.algorithm << std::right << std::setw(12) << t.mean_us << "\n";
    os << "\nbetter scored results\n";
    os << std::left << std::setw(8) << "terms" << std::setw(6) << "ret%" << std::right << std::setw(10) << "pct"
       << std::setw(10) << "|Sp|" << std::setw(10) << "|Sc\\Sp|" << std::setw(8) << "NA" << "\n";
    for (auto const& e : r.effectiveness)
        os << std::left << std::setw(8) << bucket_name(e.bucket) << std::setw(6) << e.retention << std::right
           << std::setw(10) << e.mean_percentage << std::setw(10) << e.prefix_results << std::setw(10)
           << e.better_results << std::setw(8) << e.undefined << "\n";
    os << "\nspace\n";
    for (auto const& s : r.space)
        os << std::left << std::setw(16) << s.component << std::right << std::setw(14) << s.bytes << " bytes"
           << std::setw(10) << s.bytes_per_completion << " bpc\n";
    return os.str();
}

scored_corpus synthetic_corpus(synthetic_params const& p) {
    std::mt19937_64 rng(p.seed);
    auto random_word = [&](std::size_t min_len, std::size_t max_len) {
        std::uniform_int_distribution<std::size_t> len(min_len, max_len);
        std::uniform_int_distribution<int> letter('a', 'z');
        std::string w(len(rng), ' ');
        for (auto& c : w) c = static_cast<char>(letter(rng));
        return w;
    };
    std::set<std::string> shared, other;
    while (shared.size() < p.shared_prefix_terms) shared.insert(p.shared_prefix + random_word(2, 8));
    while (other.size() < p.other_terms) {
        auto w = random_word(2, 9);
        if (w[0] != p.shared_prefix) other.insert(std::move(w));
    }
    std::vector<std::string> shared_v(shared.begin(), shared.end()), other_v(other.begin(), other.end());
    std::shuffle(shared_v.begin(), shared_v.end(), rng);
    std::shuffle(other_v.begin(), other_v.end(), rng);

    // Skewed term popularity, so a few terms get long lists.
    auto pick = [&](std::vector<std::string> const& v) -> std::string const& {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        auto x = u(rng);
        return v[static_cast<std::size_t>(x * x * x * double(v.size())) % v.size()];
    };
    std::uniform_int_distribution<unsigned> terms(1, p.max_terms);
    std::uniform_int_distribution<int> coin(0, 2);
    std::uniform_int_distribution<score_t> score(1, 1000000);

    std::set<std::string> seen;
    std::vector<std::pair<std::string, score_t>> entries;
    // Every shared-prefix term appears in at least one completion.
    for (auto const& t : shared_v) {
        if (entries.size() >= p.completions) break;
        auto s = pick(other_v) + " " + t;
        if (seen.insert(s).second) entries.emplace_back(s, score(rng));
    }
    while (entries.size() < p.completions) {
        auto n = terms(rng);
        std::string s;
        for (unsigned i = 0; i < n; ++i) {
            if (i) s += ' ';
            s += coin(rng) == 0 ? pick(shared_v) : pick(other_v);
        }
        if (seen.insert(s).second) entries.emplace_back(std::move(s), score(rng));
    }
    return make_corpus(entries);
}

}  // namespace qac::bench
