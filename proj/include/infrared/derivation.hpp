#pragma once

#include "infrared/rational.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace ir {

using Word = std::vector<std::uint32_t>;
using Poly = std::map<Word, Rational>;

// A degree +1 derivation of the free graded algebra on a set of generators, graded
// commutative on the "commutative" ones and free associative on the others, with the
// commutative generators central up to Koszul signs (S(V) (x) T(W)). Words are kept in
// normal form: commutative letters first and sorted, the rest in their given order.
class DerivationEngine {
public:
    std::uint32_t add_generator(int degree, bool commutative = true);
    std::size_t size() const { return degree_.size(); }
    int degree(std::uint32_t g) const { return degree_.at(g); }
    bool commutative(std::uint32_t g) const { return commutative_.at(g); }
    int degree(const Word& w) const;

    // Sign of bringing w to normal form (0 if it vanishes) and the normal form itself.
    std::pair<int, Word> normalize(const Word& w) const;
    void add_term(Poly& p, const Word& w, const Rational& c) const;

    void set_image(std::uint32_t g, Poly image);
    const Poly& image(std::uint32_t g) const { return image_.at(g); }

    // Leibniz extension to polynomials.
    Poly apply(const Poly& p) const;

private:
    std::vector<int> degree_;
    std::vector<bool> commutative_;
    std::vector<Poly> image_;
};

} // namespace ir
