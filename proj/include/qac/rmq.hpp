#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qac/io.hpp"
#include "qac/succinct/bit_vector.hpp"

namespace qac {

// Range-minimum queries answered from the balanced-parentheses encoding of
// the cartesian tree of an array; the array itself is not retained.
//
// The parentheses are produced by a left-to-right scan with a stack of
// candidate minima: each element writes one ')' for every strictly greater
// element it pops and then one '(' for itself, all wrapped in a root pair.
// The leftmost minimum of A[i..j] is either i itself or the element whose
// '(' follows the rightmost minimum-excess position between open(i) and
// open(j). Excess minima are found with 512-bit block minima and a segment
// tree over 4096-bit superblocks, so a query costs O(log n).
class succinct_rmq {
public:
    succinct_rmq() = default;

    // Throws std::invalid_argument on an empty array.
    explicit succinct_rmq(std::span<const std::uint64_t> values);

    std::uint64_t size() const { return m_size; }

    // One-based position of the leftmost minimum in [p, q], 1 <= p <= q <= n.
    std::uint64_t rmq(std::uint64_t p, std::uint64_t q) const;

    succinct::bit_vector const& parentheses() const { return m_bp; }

    // Parentheses plus every navigation directory.
    std::uint64_t size_in_bits() const;

    void save(byte_writer& out) const;
    static succinct_rmq load(byte_reader& in);

private:
    static constexpr std::uint64_t block_bits = 512;
    static constexpr std::uint64_t blocks_per_super = 8;

    struct excess_min {
        std::int64_t value;
        std::uint64_t pos;
    };

    void build_directories();
    std::int64_t excess_before(std::uint64_t pos) const {
        return 2 * static_cast<std::int64_t>(m_bp.rank1_unchecked(pos)) - static_cast<std::int64_t>(pos);
    }
    excess_min scan(std::uint64_t from, std::uint64_t to, std::int64_t before) const;
    std::uint64_t rightmost_min_excess(std::uint64_t x, std::uint64_t y) const;
    std::pair<std::int64_t, std::uint64_t> tree_query(std::uint64_t node, std::uint64_t lo, std::uint64_t hi,
                                                      std::uint64_t a, std::uint64_t b) const;
    std::uint64_t block_end(std::uint64_t b) const {
        return std::min((b + 1) * block_bits, m_bp.size()) - 1;
    }

    std::uint64_t m_size = 0;
    succinct::bit_vector m_bp;
    std::vector<std::int16_t> m_block_min;  // min excess inside each block, relative to its start
    std::vector<std::uint32_t> m_tree;      // min absolute excess per superblock (segment tree)
    std::uint64_t m_leaves = 0;
};

struct topk_stats {
    std::uint64_t pushes = 0;
    std::uint64_t pops = 0;
    std::uint64_t max_heap_size = 0;
};

// The k smallest values of A[p..q] as (one-based position, value) pairs in
// ascending value order, ties broken by position. `value_at` maps a one-based
// position to A's entry.
template <typename ValueAt>
std::vector<std::pair<std::uint64_t, std::uint64_t>> topk_smallest(ValueAt&& value_at, succinct_rmq const& rmq,
                                                                   std::uint64_t p, std::uint64_t q,
                                                                   std::uint64_t k, topk_stats* stats = nullptr) {
    if (p == 0 || p > q || q > rmq.size()) throw std::out_of_range("topk_smallest: invalid range");
    struct entry {
        std::uint64_t value, pos, lo, hi;
        bool operator>(entry const& o) const { return value != o.value ? value > o.value : pos > o.pos; }
    };
    std::priority_queue<entry, std::vector<entry>, std::greater<>> heap;
    topk_stats local;
    auto push = [&](std::uint64_t lo, std::uint64_t hi) {
        if (lo > hi) return;
        auto m = rmq.rmq(lo, hi);
        heap.push({static_cast<std::uint64_t>(value_at(m)), m, lo, hi});
        ++local.pushes;
        local.max_heap_size = std::max<std::uint64_t>(local.max_heap_size, heap.size());
    };

    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    push(p, q);
    while (!heap.empty() && out.size() < k) {
        auto top = heap.top();
        heap.pop();
        ++local.pops;
        out.emplace_back(top.pos, top.value);
        if (out.size() == k) break;
        push(top.lo, top.pos - 1);
        push(top.pos + 1, top.hi);
    }
    if (stats) *stats = local;
    return out;
}

}  // namespace qac
