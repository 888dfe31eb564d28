#include "qac/rmq.hpp"

#include <array>
#include <limits>
#include <string>

namespace qac {

namespace {

struct byte_excess {
    std::int8_t delta;    // excess change over the 8 bits
    std::int8_t min;      // minimum prefix excess after each bit
    std::uint8_t argmin;  // rightmost bit reaching `min`
};

constexpr std::array<byte_excess, 256> make_byte_table() {
    std::array<byte_excess, 256> table{};
    for (int v = 0; v < 256; ++v) {
        int e = 0, best = 9, arg = 0;
        for (int k = 0; k < 8; ++k) {
            e += ((v >> k) & 1) ? 1 : -1;
            if (e <= best) {
                best = e;
                arg = k;
            }
        }
        table[v] = {static_cast<std::int8_t>(e), static_cast<std::int8_t>(best), static_cast<std::uint8_t>(arg)};
    }
    return table;
}

constexpr auto byte_table = make_byte_table();

}  // namespace

succinct_rmq::succinct_rmq(std::span<const std::uint64_t> values) : m_size(values.size()) {
    if (values.empty()) throw std::invalid_argument("succinct_rmq: empty array");
    succinct::bit_vector_builder bp;
    bp.push_back(true);
    std::vector<std::uint64_t> stack;
    for (auto v : values) {
        while (!stack.empty() && stack.back() > v) {
            stack.pop_back();
            bp.push_back(false);
        }
        stack.push_back(v);
        bp.push_back(true);
    }
    for (std::size_t i = 0; i < stack.size(); ++i) bp.push_back(false);
    bp.push_back(false);
    m_bp = succinct::bit_vector(std::move(bp));
    build_directories();
}

void succinct_rmq::build_directories() {
    auto blocks = (m_bp.size() + block_bits - 1) / block_bits;
    m_block_min.assign(blocks, 0);
    std::vector<std::uint32_t> super_min((blocks + blocks_per_super - 1) / blocks_per_super,
                                         std::numeric_limits<std::uint32_t>::max());
    for (std::uint64_t b = 0; b < blocks; ++b) {
        auto before = excess_before(b * block_bits);
        auto m = scan(b * block_bits, block_end(b), before);
        m_block_min[b] = static_cast<std::int16_t>(m.value - before);
        auto& s = super_min[b / blocks_per_super];
        s = std::min(s, static_cast<std::uint32_t>(m.value));
    }
    m_leaves = 1;
    while (m_leaves < super_min.size()) m_leaves *= 2;
    m_tree.assign(2 * m_leaves, std::numeric_limits<std::uint32_t>::max());
    std::copy(super_min.begin(), super_min.end(), m_tree.begin() + m_leaves);
    for (auto i = m_leaves - 1; i >= 1; --i) m_tree[i] = std::min(m_tree[2 * i], m_tree[2 * i + 1]);
}

// Minimum of E(from..to), where E(p) is the excess after bit p, with the
// rightmost position attaining it. `before` is E(from - 1).
succinct_rmq::excess_min succinct_rmq::scan(std::uint64_t from, std::uint64_t to, std::int64_t before) const {
    auto words = m_bp.words();
    std::int64_t e = before;
    excess_min best{std::numeric_limits<std::int64_t>::max(), from};
    auto p = from;
    auto step_bit = [&] {
        e += ((words[p / 64] >> (p % 64)) & 1) ? 1 : -1;
        if (e <= best.value) best = {e, p};
        ++p;
    };
    while (p <= to && p % 8) step_bit();
    while (p + 7 <= to) {
        auto const& info = byte_table[(words[p / 64] >> (p % 64)) & 0xff];
        if (e + info.min <= best.value) best = {e + info.min, p + info.argmin};
        e += info.delta;
        p += 8;
    }
    while (p <= to) step_bit();
    return best;
}

std::pair<std::int64_t, std::uint64_t> succinct_rmq::tree_query(std::uint64_t node, std::uint64_t lo,
                                                                std::uint64_t hi, std::uint64_t a,
                                                                std::uint64_t b) const {
    if (b < lo || hi < a) return {std::numeric_limits<std::int64_t>::max(), 0};
    if (a <= lo && hi <= b) {
        if (lo == hi) return {m_tree[node], lo};
        // Descend towards the rightmost leaf holding this subtree's minimum.
        auto mid = lo + (hi - lo) / 2;
        if (m_tree[2 * node + 1] <= m_tree[2 * node]) return tree_query(2 * node + 1, mid + 1, hi, a, b);
        return tree_query(2 * node, lo, mid, a, b);
    }
    auto mid = lo + (hi - lo) / 2;
    auto left = tree_query(2 * node, lo, mid, a, b);
    auto right = tree_query(2 * node + 1, mid + 1, hi, a, b);
    return right.first <= left.first ? right : left;
}

std::uint64_t succinct_rmq::rightmost_min_excess(std::uint64_t x, std::uint64_t y) const {
    auto bx = x / block_bits, by = y / block_bits;
    if (bx == by) return scan(x, y, excess_before(x)).pos;

    enum class region { bits, block, super };
    auto head = scan(x, block_end(bx), excess_before(x));
    std::int64_t best = head.value;
    region where = region::bits;
    std::uint64_t where_pos = head.pos;

    auto consider_block = [&](std::uint64_t b) {
        auto v = excess_before(b * block_bits) + m_block_min[b];
        if (v <= best) {
            best = v;
            where = region::block;
            where_pos = b;
        }
    };

    auto b = bx + 1;
    for (; b < by && b % blocks_per_super; ++b) consider_block(b);
    if (b + blocks_per_super <= by) {
        auto s_first = b / blocks_per_super;
        auto s_last = by / blocks_per_super - 1;
        auto [v, s] = tree_query(1, 0, m_leaves - 1, s_first, s_last);
        if (v <= best) {
            best = v;
            where = region::super;
            where_pos = s;
        }
        b = (s_last + 1) * blocks_per_super;
    }
    for (; b < by; ++b) consider_block(b);

    auto tail = scan(by * block_bits, y, excess_before(by * block_bits));
    if (tail.value <= best) return tail.pos;

    if (where == region::bits) return where_pos;
    if (where == region::super) {
        auto first = where_pos * blocks_per_super;
        auto blk = std::min(first + blocks_per_super, static_cast<std::uint64_t>(m_block_min.size()));
        while (blk-- > first) {
            if (excess_before(blk * block_bits) + m_block_min[blk] == best) break;
        }
        where_pos = blk;
    }
    return scan(where_pos * block_bits, block_end(where_pos), excess_before(where_pos * block_bits)).pos;
}

std::uint64_t succinct_rmq::rmq(std::uint64_t p, std::uint64_t q) const {
    if (p == 0 || p > q || q > m_size)
        throw std::out_of_range("rmq: invalid range [" + std::to_string(p) + "," + std::to_string(q) + "]");
    if (p == q) return p;
    // '(' of the i-th element (one-based) is the (i+1)-th one: the root comes first.
    auto x = m_bp.select1(p + 1);
    auto y = m_bp.select1(q + 1);
    auto w = rightmost_min_excess(x, y);
    if (excess_before(w + 1) >= excess_before(x + 1)) return p;
    return m_bp.rank1_unchecked(w + 2) - 1;
}

std::uint64_t succinct_rmq::size_in_bits() const {
    return m_bp.size_in_bits() + 16 * m_block_min.size() + 32 * m_tree.size() + 2 * 64;
}

void succinct_rmq::save(byte_writer& out) const {
    out.write_u64(m_size);
    m_bp.save(out);
}

succinct_rmq succinct_rmq::load(byte_reader& in) {
    succinct_rmq r;
    r.m_size = in.read_u64();
    r.m_bp = succinct::bit_vector::load(in);
    if (r.m_size == 0) {
        if (r.m_bp.size() != 0) throw format_error("succinct_rmq: payload on empty structure");
        return r;
    }
    if (r.m_bp.size() != 2 * r.m_size + 2 || r.m_bp.num_ones() != r.m_size + 1)
        throw format_error("succinct_rmq: malformed parentheses");
    r.build_directories();
    return r;
}

}  // namespace qac
