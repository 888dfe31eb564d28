#include "qac/service.hpp"

#include <charconv>
#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

namespace qac::service {

namespace {

using json = nlohmann::json;

response error(int status, std::string const& message) { return {status, json{{"error", message}}.dump()}; }

response complete(engine const& e, std::map<std::string, std::string> const& params) {
    auto q = params.find("q");
    if (q == params.end() || q->second.empty()) return error(400, "missing query parameter q");

    std::uint64_t k = engine::default_k;
    if (auto it = params.find("k"); it != params.end()) {
        auto const& s = it->second;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
        if (ec != std::errc() || ptr != s.data() + s.size()) return error(400, "k must be an integer");
        if (k < 1 || k > max_k) return error(400, "k must be in [1, " + std::to_string(max_k) + "]");
    }
    auto mode = search_mode::conjunctive;
    if (auto it = params.find("mode"); it != params.end()) {
        auto m = parse_mode(it->second);
        if (!m) return error(400, "mode must be prefix or conjunctive");
        mode = *m;
    }
    auto variant = search_variant::fwd;
    if (auto it = params.find("variant"); it != params.end()) {
        auto v = parse_variant(it->second);
        if (!v) return error(400, "variant must be heap, fwd or fc");
        variant = *v;
    }

    auto rs = e.dispatch(q->second, k, mode, variant);
    json results = json::array();
    for (std::size_t i = 0; i < rs.results.size(); ++i) {
        auto const& r = rs.results[i];
        results.push_back({{"rank", i + 1}, {"docid", r.docid}, {"score", r.score}, {"completion", r.completion}});
    }
    json doc = {{"query", q->second},
                {"mode", to_string(mode)},
                {"variant", to_string(variant)},
                {"k", k},
                {"parsed", {{"prefix_ids", rs.parsed.prefix}, {"suffix", rs.parsed.suffix}}},
                {"results", std::move(results)},
                {"timings_us",
                 {{"parse", rs.timings.parse_us},
                  {"locate", rs.timings.locate_us},
                  {"search", rs.timings.search_us},
                  {"report", rs.timings.report_us},
                  {"total", rs.timings.total_us}}}};
    return {200, doc.dump()};
}

}  // namespace

response handle(engine const& e, std::string const& path, std::map<std::string, std::string> const& params) {
    try {
        if (path == "/complete") return complete(e, params);
        if (path == "/healthz") return {200, json{{"status", "ok"}}.dump()};
        if (path == "/stats") return {200, stats_to_json(e.index().stats)};
        return error(404, "not found");
    } catch (std::exception const& ex) {
        return error(500, ex.what());
    }
}

std::pair<std::string, int> resolve_address(std::string const& fallback) {
    std::string addr = fallback;
    if (char const* env = std::getenv(bind_env_var); env && *env) addr = env;
    auto colon = addr.rfind(':');
    if (colon == std::string::npos) throw std::invalid_argument("address must be host:port, got '" + addr + "'");
    auto host = addr.substr(0, colon);
    auto port_str = addr.substr(colon + 1);
    int port = 0;
    auto [ptr, ec] = std::from_chars(port_str.data(), port_str.data() + port_str.size(), port);
    if (ec != std::errc() || ptr != port_str.data() + port_str.size() || port < 0 || port > 65535)
        throw std::invalid_argument("bad port in address '" + addr + "'");
    return {host.empty() ? "0.0.0.0" : host, port};
}

struct server::impl {
    engine eng;
    httplib::Server http;

    explicit impl(autocomplete_index const& idx) : eng(idx) {
        http.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
        auto route = [this](httplib::Request const& req, httplib::Response& res) {
            std::map<std::string, std::string> params;
            for (auto const& [key, value] : req.params) params[key] = value;
            auto r = handle(eng, req.path, params);
            res.status = r.status;
            res.set_content(r.body, "application/json");
        };
        http.Get("/complete", route);
        http.Get("/healthz", route);
        http.Get("/stats", route);
        http.set_exception_handler([](httplib::Request const&, httplib::Response& res, std::exception_ptr) {
            res.status = 500;
            res.set_content(R"({"error":"internal error"})", "application/json");
        });
    }
};

server::server(autocomplete_index const& idx) : m_impl(std::make_unique<impl>(idx)) {}
server::~server() { stop(); }

bool server::listen(std::string const& host, int port) { return m_impl->http.listen(host, port); }
int server::bind_any_port(std::string const& host) { return m_impl->http.bind_to_any_port(host); }
bool server::listen_after_bind() { return m_impl->http.listen_after_bind(); }
void server::stop() {
    if (m_impl) m_impl->http.stop();
}
bool server::running() const { return m_impl->http.is_running(); }

}  // namespace qac::service
