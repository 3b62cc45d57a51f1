#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace ir {

// A subset of point indices. Index order is label order, so comparing the sorted
// index lists of two masks is the canonical (label-lexicographic) order.
using Mask = std::uint32_t;
inline constexpr std::size_t kMaxPoints = 31;

inline int popcount(Mask m) { return std::popcount(m); }
inline Mask bit(int i) { return Mask(1) << i; }
inline bool has(Mask m, int i) { return (m >> i) & 1u; }
inline int lowest(Mask m) { return std::countr_zero(m); }

inline std::vector<int> bits(Mask m)
{
    std::vector<int> out;
    out.reserve(std::popcount(m));
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

inline Mask mask_of(const std::vector<int>& idx)
{
    Mask m = 0;
    for (int i : idx)
        m |= bit(i);
    return m;
}

// Lexicographic comparison of the sorted index lists.
inline bool mask_less(Mask a, Mask b)
{
    while (a && b) {
        int x = std::countr_zero(a), y = std::countr_zero(b);
        if (x != y)
            return x < y;
        a &= a - 1;
        b &= b - 1;
    }
    return !a && b;
}

struct MaskLess {
    bool operator()(Mask a, Mask b) const { return mask_less(a, b); }
};

// Lexicographic order on sorted cell lists.
inline bool cells_less(const std::vector<Mask>& a, const std::vector<Mask>& b)
{
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i])
            return mask_less(a[i], b[i]);
    }
    return a.size() < b.size();
}

} // namespace ir
