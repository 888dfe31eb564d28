#include "qac/index.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <iterator>
#include <map>

#include <json.hpp>

namespace qac {

namespace {

std::vector<std::uint64_t> to_words(succinct::compact_vector const& cv) {
    std::vector<std::uint64_t> out(cv.size());
    for (std::uint64_t i = 0; i < cv.size(); ++i) out[i] = cv[i];
    return out;
}

std::uint32_t crc(std::span<const std::uint8_t> bytes) {
    uLong c = crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed large sections in chunks.
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        auto n = std::min<std::size_t>(bytes.size() - pos, 1u << 30);
        c = crc32(c, bytes.data() + pos, static_cast<uInt>(n));
        pos += n;
    }
    return static_cast<std::uint32_t>(c);
}

corpus_stats compute_stats(scored_corpus const& corpus, build_options const& opts) {
    corpus_stats s;
    s.completions = corpus.size();
    s.unique_terms = corpus.vocabulary.size();
    s.dictionary_bucket_size = opts.dictionary_bucket_size;
    s.completions_bucket_size = opts.completions_bucket_size;
    std::uint64_t term_occurrences = 0, term_chars = 0;
    for (auto const& c : corpus.completions) {
        s.raw_bytes += c.text.size() + 1;
        term_occurrences += tokenize(c.text).size();
    }
    for (auto const& t : corpus.vocabulary) term_chars += t.size();
    if (s.unique_terms) {
        s.avg_chars_per_term = double(term_chars) / double(s.unique_terms);
        s.avg_queries_per_term = double(term_occurrences) / double(s.unique_terms);
    }
    if (s.completions) s.avg_terms_per_query = double(term_occurrences) / double(s.completions);
    return s;
}

nlohmann::json stats_json(corpus_stats const& s) {
    return {{"completions", s.completions},
            {"unique_terms", s.unique_terms},
            {"raw_bytes", s.raw_bytes},
            {"avg_chars_per_term", s.avg_chars_per_term},
            {"avg_queries_per_term", s.avg_queries_per_term},
            {"avg_terms_per_query", s.avg_terms_per_query},
            {"dictionary_bucket_size", s.dictionary_bucket_size},
            {"completions_bucket_size", s.completions_bucket_size}};
}

corpus_stats stats_from_json(nlohmann::json const& j) {
    corpus_stats s;
    s.completions = j.at("completions");
    s.unique_terms = j.at("unique_terms");
    s.raw_bytes = j.at("raw_bytes");
    s.avg_chars_per_term = j.at("avg_chars_per_term");
    s.avg_queries_per_term = j.at("avg_queries_per_term");
    s.avg_terms_per_query = j.at("avg_terms_per_query");
    s.dictionary_bucket_size = j.at("dictionary_bucket_size");
    s.completions_bucket_size = j.at("completions_bucket_size");
    return s;
}

}  // namespace

autocomplete_index build_index(scored_corpus const& corpus, build_options const& opts) {
    autocomplete_index idx;
    idx.stats = compute_stats(corpus, opts);
    idx.dictionary = fc_dictionary(corpus.vocabulary, opts.dictionary_bucket_size);

    auto sorted = to_int_completions(corpus, idx.dictionary);
    idx.trie = completion_trie(sorted);
    idx.fc_completions = fc_completion_set(sorted, opts.completions_bucket_size);
    idx.forward = forward_index(sorted, idx.dictionary.size());
    idx.docids = docid_map(sorted);
    if (!sorted.empty()) idx.docids_rmq = succinct_rmq(idx.docids.docids());

    idx.inverted = inverted_index(sorted, idx.dictionary.size());
    if (idx.dictionary.size()) idx.minimal_rmq = succinct_rmq(to_words(idx.inverted.minimal_array()));

    std::vector<std::uint64_t> reversed;
    reversed.reserve(corpus.size());
    for (auto it = corpus.completions.rbegin(); it != corpus.completions.rend(); ++it) reversed.push_back(it->score);
    idx.reversed_scores = succinct::elias_fano(reversed, reversed.empty() ? 1 : reversed.back() + 1);
    return idx;
}

space_report space_usage(autocomplete_index const& idx) {
    space_report r;
    r.dictionary = idx.dictionary.size_in_bytes();
    r.trie = idx.trie.size_in_bytes();
    r.fc_completions = idx.fc_completions.size_in_bytes();
    r.forward = idx.forward.size_in_bytes();
    r.docids = idx.docids.size_in_bytes();
    r.docids_rmq = (idx.docids_rmq.size_in_bits() + 7) / 8;
    r.inverted = idx.inverted.lists_size_in_bytes();
    r.minimal = idx.inverted.minimal_size_in_bytes();
    r.minimal_rmq = (idx.minimal_rmq.size_in_bits() + 7) / 8;
    r.scores = (idx.reversed_scores.size_in_bits() + 7) / 8;
    return r;
}

std::string stats_to_json(corpus_stats const& s) { return stats_json(s).dump(); }

std::vector<std::uint8_t> serialize(autocomplete_index const& idx) {
    std::vector<std::pair<std::string, std::vector<std::uint8_t>>> sections;
    auto add = [&](char const* name, auto&& fill) {
        byte_writer w;
        fill(w);
        sections.emplace_back(name, w.release());
    };
    add("DICT", [&](byte_writer& w) { idx.dictionary.save(w); });
    add("TRIE", [&](byte_writer& w) { idx.trie.save(w); });
    add("FCSET", [&](byte_writer& w) { idx.fc_completions.save(w); });
    add("FWD", [&](byte_writer& w) { idx.forward.save(w); });
    add("DMAP", [&](byte_writer& w) { idx.docids.save(w); });
    add("RMQD", [&](byte_writer& w) { idx.docids_rmq.save(w); });
    add("IIDX", [&](byte_writer& w) { idx.inverted.save_lists(w); });
    add("MINL", [&](byte_writer& w) { idx.inverted.save_minimal(w); });
    add("RMQM", [&](byte_writer& w) { idx.minimal_rmq.save(w); });
    add("META", [&](byte_writer& w) {
        w.write_string(stats_json(idx.stats).dump());
        idx.reversed_scores.save(w);
    });

    byte_writer out;
    out.write_raw({reinterpret_cast<std::uint8_t const*>(container_magic), 8});
    out.write_u32(container_version);
    out.write_u32(static_cast<std::uint32_t>(sections.size()));
    std::uint64_t offset = 8 + 4 + 4 + sections.size() * (8 + 8 + 8 + 4);
    for (auto const& [name, bytes] : sections) {
        std::uint8_t padded[8] = {};
        std::memcpy(padded, name.data(), name.size());
        out.write_raw(padded);
        out.write_u64(offset);
        out.write_u64(bytes.size());
        out.write_u32(crc(bytes));
        offset += bytes.size();
    }
    for (auto const& [name, bytes] : sections) out.write_raw(bytes);
    return out.release();
}

std::vector<section_entry> read_section_table(std::span<const std::uint8_t> bytes) {
    byte_reader in(bytes);
    auto magic = in.read_raw(8);
    if (std::memcmp(magic.data(), container_magic, 8) != 0) throw format_error("not an index file (bad magic)");
    auto version = in.read_u32();
    if (version != container_version)
        throw format_error("unsupported index format version " + std::to_string(version));
    auto count = in.read_u32();
    std::vector<section_entry> table;
    for (std::uint32_t i = 0; i < count; ++i) {
        auto raw = in.read_raw(8);
        section_entry e;
        e.name.assign(reinterpret_cast<char const*>(raw.data()), strnlen(reinterpret_cast<char const*>(raw.data()), 8));
        e.offset = in.read_u64();
        e.length = in.read_u64();
        e.checksum = in.read_u32();
        if (e.offset > bytes.size() || e.length > bytes.size() - e.offset)
            throw format_error("section " + e.name + " extends past end of file");
        table.push_back(std::move(e));
    }
    return table;
}

autocomplete_index deserialize(std::span<const std::uint8_t> bytes) {
    std::map<std::string, std::span<const std::uint8_t>> sections;
    for (auto const& e : read_section_table(bytes)) {
        auto payload = bytes.subspan(e.offset, e.length);
        if (crc(payload) != e.checksum) throw format_error("checksum mismatch in section " + e.name);
        sections[e.name] = payload;
    }
    for (auto name : section_names) {
        if (!sections.count(name)) throw format_error(std::string("missing section ") + name);
    }

    auto parse = [&](char const* name, auto&& fn) {
        byte_reader in(sections[name]);
        fn(in);
        if (!in.done()) throw format_error(std::string("trailing bytes in section ") + name);
    };

    autocomplete_index idx;
    parse("DICT", [&](byte_reader& in) { idx.dictionary = fc_dictionary::load(in); });
    parse("TRIE", [&](byte_reader& in) { idx.trie = completion_trie::load(in); });
    parse("FCSET", [&](byte_reader& in) { idx.fc_completions = fc_completion_set::load(in); });
    parse("FWD", [&](byte_reader& in) { idx.forward = forward_index::load(in); });
    parse("DMAP", [&](byte_reader& in) { idx.docids = docid_map::load(in); });
    parse("RMQD", [&](byte_reader& in) { idx.docids_rmq = succinct_rmq::load(in); });
    byte_reader lists(sections["IIDX"]), minimal(sections["MINL"]);
    idx.inverted = inverted_index::load(lists, minimal);
    if (!lists.done() || !minimal.done()) throw format_error("trailing bytes in section IIDX/MINL");
    parse("RMQM", [&](byte_reader& in) { idx.minimal_rmq = succinct_rmq::load(in); });
    parse("META", [&](byte_reader& in) {
        try {
            idx.stats = stats_from_json(nlohmann::json::parse(in.read_string()));
        } catch (nlohmann::json::exception const& e) {
            throw format_error(std::string("malformed META: ") + e.what());
        }
        idx.reversed_scores = succinct::elias_fano::load(in);
    });

    auto n = idx.docids.size();
    auto t = idx.dictionary.size();
    if (idx.forward.size() != n || idx.fc_completions.size() != n || idx.docids_rmq.size() != n ||
        idx.trie.num_completions() != n || idx.inverted.num_docs() != n || idx.reversed_scores.size() != n ||
        idx.inverted.num_terms() != t || idx.minimal_rmq.size() != t || idx.stats.completions != n)
        throw format_error("index sections disagree on corpus size");
    return idx;
}

void save_index(autocomplete_index const& idx, std::filesystem::path const& path) {
    auto bytes = serialize(idx);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<char const*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

autocomplete_index load_index(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize(bytes);
}

}  // namespace qac
