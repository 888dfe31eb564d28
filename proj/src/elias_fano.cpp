#include "qac/succinct/elias_fano.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace qac::succinct {

elias_fano::elias_fano(std::span<const std::uint64_t> values, std::uint64_t universe)
    : m_size(values.size()), m_universe(universe) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] >= universe)
            throw std::invalid_argument("elias_fano: value " + std::to_string(values[i]) +
                                        " not below universe " + std::to_string(universe));
        if (i && values[i] < values[i - 1])
            throw std::invalid_argument("elias_fano: sequence not monotone at index " + std::to_string(i));
    }
    if (m_size == 0) return;

    if (universe > m_size) m_low_bits = static_cast<unsigned>(std::bit_width(universe / m_size) - 1);

    m_lows = compact_vector(m_size, m_low_bits);
    bit_vector_builder highs(m_size + (universe >> m_low_bits) + 1);
    auto low_mask = m_low_bits == 0 ? 0 : (std::uint64_t(1) << m_low_bits) - 1;
    for (std::uint64_t i = 0; i < m_size; ++i) {
        m_lows.set(i, values[i] & low_mask);
        highs.set((values[i] >> m_low_bits) + i, true);
    }
    m_highs = bit_vector(std::move(highs), {.select1_hints = true, .select0_hints = true});
}

std::uint64_t elias_fano::access(std::uint64_t i) const {
    if (i >= m_size)
        throw std::out_of_range("elias_fano: access(" + std::to_string(i) + ") on sequence of size " +
                                std::to_string(m_size));
    return (*this)[i];
}

std::uint64_t elias_fano::next_geq(std::uint64_t x) const {
    auto it = begin();
    return it.next_geq(x);
}

std::uint64_t elias_fano::lower_bound(std::uint64_t x) const {
    auto it = begin();
    it.next_geq(x);
    return it.index();
}

std::vector<std::uint64_t> elias_fano::decode() const {
    std::vector<std::uint64_t> out;
    out.reserve(m_size);
    for (auto it = begin(); !it.exhausted(); it.next()) out.push_back(it.value());
    return out;
}

void elias_fano::save(byte_writer& out) const {
    out.write_u64(m_size);
    out.write_u64(m_universe);
    out.write_u64(m_low_bits);
    if (m_size == 0) return;
    m_lows.save(out);
    m_highs.save(out);
}

elias_fano elias_fano::load(byte_reader& in) {
    elias_fano ef;
    ef.m_size = in.read_u64();
    ef.m_universe = in.read_u64();
    ef.m_low_bits = static_cast<unsigned>(in.read_u64());
    if (ef.m_size == 0) return ef;
    ef.m_lows = compact_vector::load(in);
    ef.m_highs = bit_vector::load(in);
    if (ef.m_lows.size() != ef.m_size || ef.m_highs.num_ones() != ef.m_size)
        throw format_error("elias_fano: inconsistent payload");
    return ef;
}

}  // namespace qac::succinct
