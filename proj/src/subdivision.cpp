#include "infrared/subdivision.hpp"
#include "infrared/lp.hpp"
#include "infrared/matrix.hpp"
#include "infrared/parallel.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace ir {

void Subdivision::canonicalize()
{
    std::sort(cells.begin(), cells.end(), MaskLess{});
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
}

bool Subdivision::is_triangulation(const PointConfig& c) const
{
    return std::all_of(cells.begin(), cells.end(),
                       [&](Mask m) { return popcount(m) == static_cast<int>(c.dim() + 1); });
}

Mask Subdivision::used() const
{
    Mask u = 0;
    for (Mask m : cells)
        u |= m;
    return u;
}

bool subdivision_less(const Subdivision& a, const Subdivision& b)
{
    if (a.parent != b.parent)
        return mask_less(a.parent, b.parent);
    return cells_less(a.cells, b.cells);
}

namespace {

void check_parent(const PointConfig& c, Mask parent)
{
    if (parent & ~c.all())
        throw std::invalid_argument("subdivision parent must consist of finite points");
    if (popcount(parent) < static_cast<int>(c.dim() + 1))
        throw std::invalid_argument("subdivision parent is lower-dimensional");
}

// psi(q) minus the affine interpolation of psi over the simplex b, evaluated at q.
Rational height_above(const PointConfig& c, const std::vector<int>& b, int q, const VecQ& psi)
{
    VecQ lambda = barycentric(c, b, q);
    Rational h = psi[q];
    for (std::size_t i = 0; i < b.size(); ++i)
        h -= lambda[i] * psi[b[i]];
    return h;
}

std::vector<int> first_points(Mask m, std::size_t k)
{
    std::vector<int> out = bits(m);
    out.resize(k);
    return out;
}

} // namespace

Subdivision lower_hull_subdivision(const PointConfig& c, Mask parent, const VecQ& psi)
{
    check_parent(c, parent);
    if (psi.size() < c.size())
        throw std::invalid_argument("lower_hull_subdivision: lifting too short");
    const std::size_t d = c.dim();
    const std::vector<int> pts = bits(parent);
    Subdivision s;
    s.parent = parent;
    std::vector<int> pos(d + 1);
    for (std::size_t i = 0; i <= d; ++i)
        pos[i] = static_cast<int>(i);
    const int n = static_cast<int>(pts.size());
    const int k = static_cast<int>(d + 1);
    std::vector<int> simplex(k);
    for (;;) {
        for (int i = 0; i < k; ++i)
            simplex[i] = pts[pos[i]];
        Mask sm = mask_of(simplex);
        bool known = std::any_of(s.cells.begin(), s.cells.end(), [&](Mask cell) { return (cell & sm) == sm; });
        if (!known && c.orient(simplex) != 0) {
            Mask contact = sm;
            bool lower = true;
            for (int q : pts) {
                if (has(sm, q))
                    continue;
                int h = sgn(height_above(c, simplex, q, psi));
                if (h < 0) {
                    lower = false;
                    break;
                }
                if (h == 0)
                    contact |= bit(q);
            }
            if (lower)
                s.cells.push_back(contact);
        }
        int i = k - 1;
        while (i >= 0 && pos[i] == n - k + i)
            --i;
        if (i < 0)
            break;
        ++pos[i];
        for (int j = i + 1; j < k; ++j)
            pos[j] = pos[j - 1] + 1;
    }
    s.canonicalize();
    VecQ cert(c.size());
    for (int p : pts)
        cert[p] = psi[p];
    s.certificate = cert;
    return s;
}

void validate_subdivision(const PointConfig& c, const Subdivision& s)
{
    check_parent(c, s.parent);
    if (s.cells.empty())
        throw std::invalid_argument("subdivision has no cells");
    Rational total = 0;
    std::set<Mask> seen;
    for (Mask cell : s.cells) {
        if (cell & ~s.parent)
            throw std::invalid_argument("cell outside the parent marking");
        if (!seen.insert(cell).second)
            throw std::invalid_argument("duplicate cell");
        total += polytope_volume(c, cell); // throws if lower-dimensional
    }
    if (total != polytope_volume(c, s.parent))
        throw std::invalid_argument("cells do not tile the parent (volume mismatch)");
    auto circuits = enumerate_circuits(c, s.parent);
    for (std::size_t i = 0; i < s.cells.size(); ++i)
        for (std::size_t j = 0; j < s.cells.size(); ++j) {
            if (i == j)
                continue;
            Mask a = s.cells[i], b = s.cells[j];
            for (const auto& z : circuits)
                if ((z.plus & a) == z.plus && (z.minus & b) == z.minus)
                    throw std::invalid_argument("cells intersect improperly");
            for (int w : bits(a & ~b))
                if (in_hull(c, b, w))
                    throw std::invalid_argument("incompatible markings on a shared face");
        }
}

namespace {

struct FoldingSystem {
    std::vector<int> vars;       // point index per variable
    std::map<int, std::size_t> var_of;
    std::vector<LinearConstraint> eqs, strict;
};

FoldingSystem folding_system(const PointConfig& c, const Subdivision& s, bool with_strict)
{
    const std::size_t d = c.dim();
    FoldingSystem f;
    f.vars = bits(s.parent);
    for (std::size_t i = 0; i < f.vars.size(); ++i)
        f.var_of[f.vars[i]] = i;
    const std::size_t n = f.vars.size();
    auto row_for = [&](const std::vector<int>& base, int q) {
        VecQ row(n);
        VecQ lambda = barycentric(c, base, q);
        row[f.var_of[q]] += 1;
        for (std::size_t i = 0; i < base.size(); ++i)
            row[f.var_of[base[i]]] -= lambda[i];
        return row;
    };
    for (Mask cell : s.cells) {
        auto base = first_points(cell, d + 1);
        for (int w : bits(cell & ~mask_of(base)))
            f.eqs.push_back({row_for(base, w), 0});
    }
    if (!with_strict)
        return f;
    for (std::size_t i = 0; i < s.cells.size(); ++i)
        for (std::size_t j = i + 1; j < s.cells.size(); ++j) {
            Mask a = s.cells[i], b = s.cells[j];
            if (popcount(a & b) < static_cast<int>(d))
                continue;
            f.strict.push_back({row_for(first_points(a, d + 1), lowest(b & ~a)), 0});
        }
    for (int w : bits(s.parent & ~s.used())) {
        auto it = std::find_if(s.cells.begin(), s.cells.end(), [&](Mask cell) { return in_hull(c, cell, w); });
        if (it == s.cells.end())
            throw std::invalid_argument("unused point outside every cell");
        f.strict.push_back({row_for(first_points(*it, d + 1), w), 0});
    }
    return f;
}

} // namespace

namespace {

// The folding LP for a subdivision already known to tile its parent.
RegularityResult regularity_lp(const PointConfig& c, const Subdivision& s)
{
    FoldingSystem f = folding_system(c, s, true);
    auto lp = lp_strict_feasible(f.vars.size(), f.eqs, f.strict);
    RegularityResult r;
    if (!lp.feasible)
        return r;
    VecQ w = primitive(lp.witness);
    VecQ cert(c.size());
    for (std::size_t i = 0; i < f.vars.size(); ++i)
        cert[f.vars[i]] = w[i];
    Subdivision check = lower_hull_subdivision(c, s.parent, cert);
    if (!(check == s))
        throw std::logic_error("is_regular: certificate does not reproduce the subdivision");
    r.regular = true;
    r.certificate = cert;
    return r;
}

} // namespace

RegularityResult is_regular(const PointConfig& c, const Subdivision& s)
{
    validate_subdivision(c, s);
    return regularity_lp(c, s);
}

std::size_t pw_affine_dim(const PointConfig& c, const Subdivision& s)
{
    FoldingSystem f = folding_system(c, s, false);
    std::vector<VecQ> rows;
    for (const auto& e : f.eqs)
        rows.push_back(e.coeffs);
    const std::size_t free_used = static_cast<std::size_t>(popcount(s.used())) - rank_of_rows(rows);
    return free_used + static_cast<std::size_t>(popcount(s.parent & ~s.used()));
}

long reduced_dim(const PointConfig& c, const Subdivision& s)
{
    return static_cast<long>(pw_affine_dim(c, s)) - static_cast<long>(c.dim() + 1);
}

bool is_coarse(const PointConfig& c, const Subdivision& s)
{
    if (s.cells.size() == 1 && s.cells[0] == s.parent)
        return false;
    return is_regular(c, s).regular && reduced_dim(c, s) == 1;
}

bool refines(const Subdivision& fine, const Subdivision& coarse)
{
    if (fine.parent != coarse.parent)
        return false;
    for (Mask f : fine.cells)
        if (std::none_of(coarse.cells.begin(), coarse.cells.end(), [&](Mask g) { return (f & g) == f; }))
            return false;
    return true;
}

std::optional<Subdivision> flip(const Subdivision& t, const Circuit& z)
{
    std::vector<Mask> plus_side, minus_side;
    for (int w : bits(z.minus))
        plus_side.push_back(z.support & ~bit(w));
    for (int w : bits(z.plus))
        minus_side.push_back(z.support & ~bit(w));
    auto contains_all = [&](const std::vector<Mask>& side) {
        return std::all_of(side.begin(), side.end(), [&](Mask m) {
            return std::binary_search(t.cells.begin(), t.cells.end(), m, MaskLess{});
        });
    };
    const std::vector<Mask>* from = nullptr;
    const std::vector<Mask>* to = nullptr;
    if (contains_all(plus_side)) {
        from = &plus_side;
        to = &minus_side;
    } else if (contains_all(minus_side)) {
        from = &minus_side;
        to = &plus_side;
    } else {
        return std::nullopt;
    }
    Subdivision out;
    out.parent = t.parent;
    for (Mask m : t.cells)
        if (std::find(from->begin(), from->end(), m) == from->end())
            out.cells.push_back(m);
    for (Mask m : *to)
        out.cells.push_back(m);
    out.canonicalize();
    return out;
}

std::vector<Subdivision> enumerate_regular_triangulations(const PointConfig& c, Mask parent,
                                                          const EnumerationOptions& opt)
{
    check_parent(c, parent);
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<long> draw(0, (1L << 30) - 1);
    Subdivision start;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 1000)
            throw std::runtime_error("could not draw a generic lifting");
        VecQ psi(c.size());
        for (int p : bits(parent))
            psi[p] = draw(rng);
        start = lower_hull_subdivision(c, parent, psi);
        if (start.is_triangulation(c))
            break;
    }
    const auto circuits = enumerate_circuits(c, parent);
    std::set<std::vector<Mask>> seen{start.cells};
    std::vector<Subdivision> found{start};
    std::vector<Subdivision> frontier{start};
    while (!frontier.empty()) {
        std::vector<Subdivision> candidates;
        for (const auto& t : frontier)
            for (const auto& z : circuits) {
                auto n = flip(t, z);
                if (n && seen.insert(n->cells).second)
                    candidates.push_back(*n);
            }
        std::vector<RegularityResult> verdict(candidates.size());
        // Flips of a triangulation tile the same parent, so validation is skipped here.
        parallel_for(candidates.size(), opt.jobs, [&](std::size_t i) { verdict[i] = regularity_lp(c, candidates[i]); });
        frontier.clear();
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (verdict[i].regular) {
                candidates[i].certificate = verdict[i].certificate;
                found.push_back(candidates[i]);
                frontier.push_back(candidates[i]);
            }
    }
    std::sort(found.begin(), found.end(), subdivision_less);
    return found;
}

} // namespace ir
