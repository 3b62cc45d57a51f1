#include "infrared/mc.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace ir {

namespace {

std::vector<Mask> side(Mask support, Mask removed)
{
    std::vector<Mask> out;
    for (int z : bits(removed))
        out.push_back(support & ~bit(z));
    std::sort(out.begin(), out.end(), mask_less);
    return out;
}

Rational product(const McElement& g, const std::vector<Mask>& cells)
{
    Rational p = 1;
    for (Mask s : cells) {
        auto it = g.find(s);
        if (it == g.end())
            return 0;
        p *= it->second;
    }
    return p;
}

} // namespace

std::vector<BinomialEquation> circuit_equations(const PointConfig& c)
{
    std::vector<BinomialEquation> out;
    for (const auto& z : enumerate_circuits(c))
        out.push_back({z.support, side(z.support, z.minus), side(z.support, z.plus)});
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return mask_less(a.support, b.support); });
    return out;
}

std::vector<Mask> simplex_basis(const PointConfig& c, Variant v)
{
    std::vector<Mask> out;
    const int k = static_cast<int>(c.dim()) + 1;
    for (Mask m = 1; m != 0 && m <= c.all(); ++m)
        if (popcount(m) == k && (v == Variant::marked || is_geometric(c, m)))
            out.push_back(m);
    std::sort(out.begin(), out.end(), mask_less);
    return out;
}

McReport is_mc(const PointConfig& c, const StructureTables& t, const McElement& gamma)
{
    if (!t.trivial_coefficients)
        throw std::invalid_argument("MC evaluation needs trivial coefficients");
    const int k = static_cast<int>(c.dim()) + 1;
    McReport rep;
    // Inputs are distinct and sorted, so (1/n!) lambda_n(gamma^n) picks each entry once.
    for (const auto& e : t.entries) {
        if (!std::all_of(e.inputs.begin(), e.inputs.end(), [&](Mask m) { return popcount(m) == k; }))
            continue;
        Rational v = product(gamma, e.inputs);
        if (!sgn(v))
            continue;
        Rational& r = rep.residual[e.output];
        r += e.coefficient.get(0, 0) * v;
        if (!sgn(r))
            rep.residual.erase(e.output);
    }
    rep.direct = rep.residual.empty();

    const auto basis = simplex_basis(c, t.variant);
    for (Mask s : basis) {
        auto it = gamma.find(s);
        if (it == gamma.end() || !sgn(it->second))
            throw std::invalid_argument("MC element must be nonzero on every basis simplex");
    }
    auto present = [&](const std::vector<Mask>& cells) {
        return std::all_of(cells.begin(), cells.end(),
                           [&](Mask s) { return std::binary_search(basis.begin(), basis.end(), s, mask_less); });
    };
    rep.binomial = true;
    for (const auto& eq : circuit_equations(c)) {
        if (t.variant == Variant::geometric && !is_geometric(c, eq.support))
            continue;
        Rational lhs = present(eq.plus) ? product(gamma, eq.plus) : Rational(0);
        Rational rhs = present(eq.minus) ? product(gamma, eq.minus) : Rational(0);
        if (!sgn(lhs) || !sgn(rhs) || lhs != rhs)
            rep.binomial = false;
    }
    return rep;
}

CocycleLattice cocycle_lattice(const PointConfig& c)
{
    CocycleLattice l;
    l.simplices = simplex_basis(c, Variant::marked);
    auto column = [&](Mask s) {
        return static_cast<std::size_t>(std::lower_bound(l.simplices.begin(), l.simplices.end(), s, mask_less) -
                                        l.simplices.begin());
    };
    for (const auto& eq : circuit_equations(c)) {
        std::vector<Integer> row(l.simplices.size(), 0);
        for (Mask s : eq.plus)
            row[column(s)] += 1;
        for (Mask s : eq.minus)
            row[column(s)] -= 1;
        l.circuits.push_back(eq.support);
        l.matrix.push_back(std::move(row));
    }
    std::vector<VecQ> rows;
    for (const auto& r : l.matrix)
        rows.emplace_back(r.begin(), r.end());
    l.matrix_rank = rank_of_rows(rows);
    l.basis = integer_kernel_basis(l.matrix, l.simplices.size());
    return l;
}

bool is_additive_cocycle(const PointConfig& c, const McElement& beta)
{
    auto sum = [&](const std::vector<Mask>& cells) {
        Rational s = 0;
        for (Mask m : cells)
            s += beta.at(m);
        return s;
    };
    for (const auto& eq : circuit_equations(c))
        if (sum(eq.plus) != sum(eq.minus))
            return false;
    return true;
}

bool in_semigroup(const CocycleLattice& l, const std::vector<Integer>& beta)
{
    if (beta.size() != l.simplices.size())
        return false;
    for (const auto& x : beta)
        if (sgn(x) < 0)
            return false;
    for (const auto& row : l.matrix) {
        Integer s = 0;
        for (std::size_t k = 0; k < row.size(); ++k)
            s += row[k] * beta[k];
        if (sgn(s))
            return false;
    }
    return true;
}

McElement area_cocycle(const PointConfig& c)
{
    McElement out;
    for (Mask s : simplex_basis(c, Variant::marked))
        out[s] = simplex_volume(c, s);
    return out;
}

Rational polytope_weight(const PointConfig& c, const McElement& gamma, Mask marking, bool additive)
{
    std::optional<Rational> weight;
    for (const auto& t : enumerate_regular_triangulations(c, marking)) {
        Rational w = additive ? Rational(0) : Rational(1);
        for (Mask s : t.cells) {
            auto it = gamma.find(s);
            if (it == gamma.end())
                throw std::invalid_argument("polytope_weight: no value on " + cell_name(c, s));
            if (additive)
                w += it->second;
            else
                w *= it->second;
        }
        if (weight && *weight != w)
            throw std::invalid_argument("polytope_weight: element is not MC on " + cell_name(c, marking));
        weight = w;
    }
    if (!weight)
        throw std::invalid_argument("polytope_weight: marking has no triangulation");
    return *weight;
}

McElement random_mc_element(const PointConfig& c, const CocycleLattice& l, std::uint64_t seed, bool perturb)
{
    (void)c;
    std::mt19937_64 rng(seed);
    static const Rational bases[] = {2, 3, Rational(1, 2), Rational(-1), 5, Rational(2, 3)};
    std::vector<Rational> value(l.simplices.size(), Rational(1));
    for (const auto& z : l.basis) {
        const int n = static_cast<int>(rng() % 3) - 1;
        const Rational& b = bases[rng() % std::size(bases)];
        if (n == 0)
            continue;
        for (std::size_t k = 0; k < z.size(); ++k) {
            long e = z[k].get_si() * n;
            Rational f = 1;
            for (long i = 0; i < std::labs(e); ++i)
                f *= b;
            value[k] *= e < 0 ? Rational(1) / f : f;
        }
    }
    if (perturb && !value.empty())
        value[rng() % value.size()] *= 2;
    McElement g;
    for (std::size_t k = 0; k < l.simplices.size(); ++k)
        g[l.simplices[k]] = value[k];
    return g;
}

} // namespace ir
