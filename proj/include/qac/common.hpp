#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace qac {

// Term ids and docids are 1-based everywhere in the public API.
using term_id_t = std::uint32_t;
using docid_t = std::uint32_t;
using score_t = std::uint64_t;

inline constexpr term_id_t invalid_term_id = 0;

// Returned by NextGeq when a list has no element >= the probe.
inline constexpr std::uint64_t infinity = std::numeric_limits<std::uint64_t>::max();

// Inclusive [begin, end] range of 1-based ids. Invalid when begin > end.
struct id_range {
    std::uint64_t begin = 1;
    std::uint64_t end = 0;

    bool valid() const { return begin <= end; }
    std::uint64_t size() const { return valid() ? end - begin + 1 : 0; }
    bool contains(std::uint64_t x) const { return begin <= x && x <= end; }

    static id_range invalid() { return {1, 0}; }

    friend bool operator==(id_range const&, id_range const&) = default;
};

class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace qac
