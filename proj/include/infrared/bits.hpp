#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace ir {

// Fixed-length bit vector for incidence sets.
class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static Bits all(std::size_t n)
    {
        Bits b(n);
        for (std::size_t i = 0; i < n; ++i)
            b.set(i);
        return b;
    }

    std::size_t size() const { return n_; }
    void set(std::size_t i) { w_[i / 64] |= std::uint64_t(1) << (i % 64); }
    bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1u; }

    std::size_t count() const
    {
        std::size_t c = 0;
        for (auto x : w_)
            c += static_cast<std::size_t>(std::popcount(x));
        return c;
    }
    bool none() const
    {
        for (auto x : w_)
            if (x)
                return false;
        return true;
    }
    bool subset_of(const Bits& o) const
    {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i])
                return false;
        return true;
    }
    Bits operator&(const Bits& o) const
    {
        Bits r(n_);
        for (std::size_t i = 0; i < w_.size(); ++i)
            r.w_[i] = w_[i] & o.w_[i];
        return r;
    }
    std::vector<std::size_t> indices() const
    {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t x = w_[k];
            while (x) {
                out.push_back(k * 64 + static_cast<std::size_t>(std::countr_zero(x)));
                x &= x - 1;
            }
        }
        return out;
    }
    bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator<(const Bits& o) const { return w_ < o.w_; }

    std::size_t hash() const
    {
        std::size_t h = n_;
        for (auto x : w_)
            h ^= std::hash<std::uint64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct BitsHash {
    std::size_t operator()(const Bits& b) const { return b.hash(); }
};

} // namespace ir
