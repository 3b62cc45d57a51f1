#include "infrared/derivation.hpp"

#include <stdexcept>

namespace ir {

std::uint32_t DerivationEngine::add_generator(int degree, bool commutative)
{
    degree_.push_back(degree);
    commutative_.push_back(commutative);
    image_.emplace_back();
    return static_cast<std::uint32_t>(degree_.size() - 1);
}

int DerivationEngine::degree(const Word& w) const
{
    int d = 0;
    for (auto g : w)
        d += degree_[g];
    return d;
}

std::pair<int, Word> DerivationEngine::normalize(const Word& w) const
{
    auto odd = [&](std::uint32_t g) { return degree_[g] % 2 != 0; };
    int sign = 1;
    Word comm, rest;
    int rest_parity = 0;
    for (auto g : w) {
        if (commutative_[g]) {
            if (odd(g) && rest_parity)
                sign = -sign;
            comm.push_back(g);
        } else {
            rest.push_back(g);
            rest_parity ^= odd(g) ? 1 : 0;
        }
    }
    // insertion sort, tracking transpositions of odd letters
    for (std::size_t i = 1; i < comm.size(); ++i) {
        for (std::size_t j = i; j > 0 && comm[j - 1] >= comm[j]; --j) {
            if (comm[j - 1] == comm[j]) {
                if (odd(comm[j]))
                    return {0, {}};
                break;
            }
            if (odd(comm[j - 1]) && odd(comm[j]))
                sign = -sign;
            std::swap(comm[j - 1], comm[j]);
        }
    }
    for (std::size_t i = 1; i < comm.size(); ++i)
        if (comm[i - 1] == comm[i] && odd(comm[i]))
            return {0, {}};
    comm.insert(comm.end(), rest.begin(), rest.end());
    return {sign, comm};
}

void DerivationEngine::add_term(Poly& p, const Word& w, const Rational& c) const
{
    if (!sgn(c))
        return;
    auto [s, n] = normalize(w);
    if (!s)
        return;
    auto [it, fresh] = p.try_emplace(n, 0);
    if (s > 0)
        it->second += c;
    else
        it->second -= c;
    if (!sgn(it->second))
        p.erase(it);
}

void DerivationEngine::set_image(std::uint32_t g, Poly image)
{
    Poly normal;
    for (const auto& [w, c] : image) {
        if (degree(w) != degree_.at(g) + 1)
            throw std::logic_error("derivation image has the wrong degree");
        add_term(normal, w, c);
    }
    image_.at(g) = std::move(normal);
}

Poly DerivationEngine::apply(const Poly& p) const
{
    Poly out;
    Word w;
    for (const auto& [word, c] : p) {
        int parity = 0;
        for (std::size_t i = 0; i < word.size(); ++i) {
            for (const auto& [img, ci] : image_[word[i]]) {
                w.assign(word.begin(), word.begin() + static_cast<long>(i));
                w.insert(w.end(), img.begin(), img.end());
                w.insert(w.end(), word.begin() + static_cast<long>(i) + 1, word.end());
                Rational coef = c * ci;
                if (parity)
                    coef = -coef;
                add_term(out, w, coef);
            }
            parity ^= degree_[word[i]] % 2 != 0 ? 1 : 0;
        }
    }
    return out;
}

} // namespace ir
