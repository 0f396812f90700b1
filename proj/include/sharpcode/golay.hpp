#pragma once

// Binary Golay codes.  The length-23 code is the cyclic code spanned by the
// shifts of the indicator of the quadratic residues mod 23; its reduced
// row-echelon generator [I_12 | B] is extended by an overall parity column.

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "error.hpp"

namespace sharpcode {

struct BinaryCode {
    int length = 0;
    std::vector<std::uint32_t> words;  // bit i is coordinate i

    std::map<int, int> weight_distribution() const {
        std::map<int, int> d;
        for (auto w : words) ++d[std::popcount(w)];
        return d;
    }
};

inline bool bit(std::uint32_t w, int i) { return (w >> i) & 1u; }

// Rows of the [24,12] generator, coordinates 0..11 forming the identity.
inline std::array<std::uint32_t, 12> golay_generator() {
    constexpr int p = 23;
    std::uint32_t qr = 0;
    for (int i = 1; i < p; ++i) qr |= 1u << ((i * i) % p);
    std::vector<std::uint32_t> rows;
    for (int s = 0; s < p; ++s) rows.push_back(((qr << s) | (qr >> (p - s))) & ((1u << p) - 1));

    std::size_t r = 0;
    for (int col = 0; col < p && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && !bit(rows[piv], col)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != r && bit(rows[i], col)) rows[i] ^= rows[r];
        ++r;
    }
    if (r != 12) throw ConstructionError("golay: quadratic-residue code has dimension " + std::to_string(r));
    std::array<std::uint32_t, 12> g{};
    for (int i = 0; i < 12; ++i) {
        if ((rows[i] & 0xFFFu) != (1u << i)) throw ConstructionError("golay: generator is not systematic");
        g[i] = rows[i] | (std::uint32_t(std::popcount(rows[i]) & 1) << 23);
    }
    return g;
}

inline BinaryCode span(int length, const std::array<std::uint32_t, 12>& g) {
    BinaryCode c;
    c.length = length;
    c.words.reserve(4096);
    for (std::uint32_t m = 0; m < 4096; ++m) {
        std::uint32_t w = 0;
        for (int i = 0; i < 12; ++i)
            if (bit(m, i)) w ^= g[i];
        c.words.push_back(w);
    }
    return c;
}

inline const BinaryCode& golay_extended() {
    static const BinaryCode code = [] {
        BinaryCode c = span(24, golay_generator());
        const std::map<int, int> want{{0, 1}, {8, 759}, {12, 2576}, {16, 759}, {24, 1}};
        if (c.weight_distribution() != want) throw ConstructionError("golay: weight distribution mismatch");
        return c;
    }();
    return code;
}

// Drop coordinate `coord` from every word.
inline BinaryCode puncture(const BinaryCode& c, int coord) {
    BinaryCode p;
    p.length = c.length - 1;
    const std::uint32_t low = (1u << coord) - 1;
    for (auto w : c.words) p.words.push_back((w & low) | ((w >> (coord + 1)) << coord));
    return p;
}

inline const BinaryCode& golay23() {
    static const BinaryCode code = [] {
        BinaryCode c = puncture(golay_extended(), 23);
        int w7 = 0;
        for (auto w : c.words) w7 += std::popcount(w) == 7;
        if (w7 != 253) throw ConstructionError("golay: punctured code has " + std::to_string(w7) + " weight-7 words");
        return c;
    }();
    return code;
}

inline std::vector<std::uint32_t> words_of_weight(const BinaryCode& c, int weight) {
    std::vector<std::uint32_t> out;
    for (auto w : c.words)
        if (std::popcount(w) == weight) out.push_back(w);
    return out;
}

}  // namespace sharpcode
