#pragma once

#include <map>
#include <memory>
#include <string>

#include "qac/engine.hpp"
#include "qac/index.hpp"

namespace qac::service {

inline constexpr char const* bind_env_var = "QAC_ADDR";
inline constexpr std::uint64_t max_k = 100;

struct response {
    int status = 200;
    std::string body;  // JSON
};

// Routes a GET request; no sockets involved, so the HTTP layer stays thin.
response handle(engine const& e, std::string const& path, std::map<std::string, std::string> const& params);

// "host:port", falling back to `fallback` when QAC_ADDR is unset or empty.
std::pair<std::string, int> resolve_address(std::string const& fallback);

class server {
public:
    explicit server(autocomplete_index const& idx);
    ~server();

    // Blocks until stop() is called. Returns false if the address cannot be bound.
    bool listen(std::string const& host, int port);
    // Binds to a free port and returns it, or -1. Call listen_after_bind() to serve.
    int bind_any_port(std::string const& host);
    bool listen_after_bind();
    // In-flight requests finish before listen() returns.
    void stop();
    bool running() const;

private:
    struct impl;
    std::unique_ptr<impl> m_impl;
};

}  // namespace qac::service
