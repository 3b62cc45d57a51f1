#include "infrared/coeff.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace ir {

namespace {

MatrixQ inverse(const MatrixQ& p)
{
    const std::size_t n = p.rows();
    std::vector<VecQ> rows;
    for (std::size_t r = 0; r < n; ++r) {
        VecQ row(2 * n);
        for (const auto& e : p.row(r))
            row[e.col] = e.value;
        row[n + r] = 1;
        rows.push_back(std::move(row));
    }
    auto [red, piv] = rref(rows, 2 * n);
    if (red.size() != n || piv.back() >= n)
        throw std::invalid_argument("coefficient pairing is degenerate");
    MatrixQ inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k)
            if (sgn(red[r][n + k]))
                inv.set(r, k, red[r][n + k]);
    return inv;
}

Mask find_infinity(const PointConfig& c)
{
    auto i = c.index_of(kInfinityLabel);
    return i ? bit(static_cast<int>(*i)) : Mask(0);
}

} // namespace

void CoefficientSystem::set(Mask wall, WallSpace space)
{
    const std::size_t n = space.degrees.size();
    if (n == 0)
        throw std::invalid_argument("coefficient space must be nonzero");
    if (space.pairing.rows() == 0)
        space.pairing = MatrixQ::identity(n);
    if (space.pairing.rows() != n || space.pairing.cols() != n)
        throw std::invalid_argument("pairing matrix has the wrong shape");
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& e : space.pairing.row(k))
            if (space.degrees[k] != space.degrees[e.col])
                throw std::invalid_argument("pairing mixes degrees");
    copairing_[wall] = inverse(space.pairing).transpose();
    walls_[wall] = std::move(space);
}

std::size_t CoefficientSystem::dim(Mask wall) const
{
    auto it = walls_.find(wall);
    return it == walls_.end() ? 1 : it->second.degrees.size();
}

std::vector<int> CoefficientSystem::degrees(Mask wall, int orientation) const
{
    auto it = walls_.find(wall);
    if (it == walls_.end())
        return {0};
    std::vector<int> d = it->second.degrees;
    if (orientation < 0)
        for (auto& x : d)
            x = -x;
    return d;
}

Rational CoefficientSystem::pairing(Mask wall, std::size_t k, std::size_t l) const
{
    auto it = walls_.find(wall);
    if (it == walls_.end())
        return 1;
    return it->second.pairing.get(k, l);
}

const MatrixQ& CoefficientSystem::copairing(Mask wall) const
{
    static const MatrixQ one = MatrixQ::identity(1);
    auto it = copairing_.find(wall);
    return it == copairing_.end() ? one : it->second;
}

CoefficientSystem random_coefficients(const PointConfig& c, std::uint64_t seed, int max_dim)
{
    std::mt19937_64 rng(seed);
    auto draw = [&](int k) { return static_cast<int>(rng() % static_cast<std::uint64_t>(k)); };
    CoefficientSystem cs;
    const Mask inf = find_infinity(c);
    const int d = static_cast<int>(c.dim());
    std::vector<Mask> walls;
    for (Mask m = 1; m <= c.all(); ++m)
        if (popcount(m) == d && !(m & inf))
            walls.push_back(m);
    std::sort(walls.begin(), walls.end(), mask_less);
    for (Mask w : walls) {
        const int n = (max_dim >= 2 && draw(4) == 0) ? 2 : 1;
        WallSpace s;
        for (int k = 0; k < n; ++k)
            s.degrees.push_back(draw(3) - 1);
        std::sort(s.degrees.begin(), s.degrees.end());
        for (;;) {
            MatrixQ p(n, n);
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    if (s.degrees[k] == s.degrees[l])
                        p.set(k, l, draw(5) - 2);
            if (rank(p) == static_cast<std::size_t>(n)) {
                s.pairing = p;
                break;
            }
        }
        cs.set(w, std::move(s));
    }
    return cs;
}

int koszul_sign(const std::vector<int>& degrees, const std::vector<std::size_t>& order)
{
    int s = 1;
    for (std::size_t a = 0; a < order.size(); ++a) {
        if (degrees[order[a]] % 2 == 0)
            continue;
        for (std::size_t b = a + 1; b < order.size(); ++b)
            if (order[a] > order[b] && degrees[order[b]] % 2 != 0)
                s = -s;
    }
    return s;
}

std::size_t TensorBlock::dim() const
{
    std::size_t n = 1;
    for (const auto& d : degrees)
        n *= d.size();
    return n;
}

std::vector<std::size_t> TensorBlock::digits(std::size_t index) const
{
    std::vector<std::size_t> out(degrees.size());
    for (std::size_t w = degrees.size(); w-- > 0;) {
        out[w] = index % degrees[w].size();
        index /= degrees[w].size();
    }
    return out;
}

std::size_t TensorBlock::index(const std::vector<std::size_t>& digits) const
{
    std::size_t i = 0;
    for (std::size_t w = 0; w < degrees.size(); ++w)
        i = i * degrees[w].size() + digits[w];
    return i;
}

int TensorBlock::degree(std::size_t index) const
{
    int total = 0;
    auto dg = digits(index);
    for (std::size_t w = 0; w < dg.size(); ++w)
        total += degrees[w][dg[w]];
    return total;
}

std::vector<Letter> TensorBlock::letters(std::size_t index) const
{
    auto dg = digits(index);
    std::vector<Letter> out;
    for (std::size_t w = 0; w < dg.size(); ++w)
        out.push_back({walls[w].wall, walls[w].orientation, dg[w], degrees[w][dg[w]]});
    return out;
}

TensorBlock make_block(const std::vector<OrientedWall>& walls, const CoefficientSystem& cs)
{
    TensorBlock b;
    b.walls = walls;
    for (const auto& w : walls)
        b.degrees.push_back(cs.degrees(w.wall, w.orientation));
    return b;
}

std::vector<OrientedWall> boundary_walls(const PointConfig& c, Mask marking)
{
    Hull h = convex_hull(c, marking);
    std::vector<OrientedWall> out;
    for (std::size_t f = 0; f < h.facets.size(); ++f)
        out.push_back({mask_of(h.facets[f]), h.facet_orientation[f]});
    std::sort(out.begin(), out.end(), [](const OrientedWall& a, const OrientedWall& b) { return mask_less(a.wall, b.wall); });
    return out;
}

TensorBlock boundary_tensor(const PointConfig& c, Mask marking, const CoefficientSystem& cs)
{
    return make_block(boundary_walls(c, marking), cs);
}

TensorBlock subdivision_tensor(const PointConfig& c, const Subdivision& s, const CoefficientSystem& cs)
{
    std::vector<OrientedWall> walls;
    for (Mask cell : s.cells) {
        auto w = boundary_walls(c, cell);
        walls.insert(walls.end(), w.begin(), w.end());
    }
    return make_block(walls, cs);
}

namespace {

// Contracts a source block into a target block. `keep[t]` is the source position feeding
// target wall t; `pairs` lists (canonical, dual) source positions to be traced out.
MatrixQ contraction(const TensorBlock& source, const TensorBlock& target, const std::vector<std::size_t>& keep,
                    const std::vector<std::pair<std::size_t, std::size_t>>& pairs, const CoefficientSystem& cs)
{
    std::vector<std::size_t> order = keep;
    for (auto [p, q] : pairs) {
        order.push_back(p);
        order.push_back(q);
    }
    MatrixQ m(target.dim(), source.dim());
    std::vector<int> deg(source.walls.size());
    std::vector<std::size_t> tdig(keep.size());
    for (std::size_t s = 0; s < source.dim(); ++s) {
        auto dg = source.digits(s);
        Rational value = 1;
        for (auto [p, q] : pairs) {
            value *= cs.pairing(source.walls[p].wall, dg[p], dg[q]);
            if (!sgn(value))
                break;
        }
        if (!sgn(value))
            continue;
        for (std::size_t w = 0; w < dg.size(); ++w)
            deg[w] = source.degrees[w][dg[w]];
        for (std::size_t t = 0; t < keep.size(); ++t)
            tdig[t] = dg[keep[t]];
        if (koszul_sign(deg, order) < 0)
            value = -value;
        m.add(target.index(tdig), s, value);
    }
    return m;
}

} // namespace

MatrixQ generalization_map(const PointConfig& c, const Subdivision& fine, const Subdivision& coarse,
                           const CoefficientSystem& cs)
{
    if (fine.parent != coarse.parent || !refines(fine, coarse))
        throw std::invalid_argument("generalization_map: fine does not refine coarse");
    TensorBlock source = subdivision_tensor(c, fine, cs);
    TensorBlock target = subdivision_tensor(c, coarse, cs);
    std::vector<bool> used(source.walls.size(), false);
    auto position = [&](const OrientedWall& w) {
        for (std::size_t p = 0; p < source.walls.size(); ++p)
            if (!used[p] && source.walls[p] == w)
                return p;
        throw std::logic_error("generalization_map: boundary wall not found among fine cells");
    };
    std::vector<std::size_t> keep;
    for (const auto& w : target.walls) {
        std::size_t p = position(w);
        used[p] = true;
        keep.push_back(p);
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t p = 0; p < source.walls.size(); ++p) {
        if (used[p] || source.walls[p].orientation < 0)
            continue;
        used[p] = true;
        std::size_t q = position({source.walls[p].wall, -1});
        used[q] = true;
        pairs.emplace_back(p, q);
    }
    if (std::find(used.begin(), used.end(), false) != used.end())
        throw std::logic_error("generalization_map: unpaired interior wall");
    std::sort(pairs.begin(), pairs.end(), [&](auto a, auto b) {
        return mask_less(source.walls[a.first].wall, source.walls[b.first].wall);
    });
    return contraction(source, target, keep, pairs, cs);
}

TensorBlock linear_tensor(const PointConfig& c, Mask marking, const CoefficientSystem& cs)
{
    if (c.dim() != 2)
        throw std::invalid_argument("linear_tensor: d = 2 only");
    const Mask inf = find_infinity(c);
    if (!(marking & inf))
        throw std::invalid_argument("linear_tensor: polygon is finite");
    Hull h = convex_hull(c, marking);
    auto& b = h.boundary;
    auto at = std::find(b.begin(), b.end(), lowest(inf));
    std::rotate(b.begin(), at, b.end());
    std::vector<OrientedWall> walls;
    for (std::size_t t = 1; t + 1 < b.size(); ++t) {
        int u = b[t], v = b[t + 1];
        walls.push_back({bit(u) | bit(v), u < v ? 1 : -1});
    }
    return make_block(walls, cs);
}

namespace {

std::vector<OrientedWall> path_walls(const EdgePath& p)
{
    std::vector<OrientedWall> out;
    const std::size_t m = p.vertices.size();
    for (std::size_t t = 0; t < m; ++t) {
        int u = p.vertices[t], v = p.vertices[(t + 1) % m];
        out.push_back({bit(u) | bit(v), u < v ? 1 : -1});
    }
    return out;
}

std::size_t edge_position(const EdgePath& p, int i, int j)
{
    const std::size_t m = p.vertices.size();
    for (std::size_t t = 0; t < m; ++t)
        if (p.vertices[t] == i && p.vertices[(t + 1) % m] == j)
            return t;
    throw std::invalid_argument("edge path does not contain the glued edge");
}

} // namespace

TensorBlock path_tensor(const EdgePath& p, const CoefficientSystem& cs) { return make_block(path_walls(p), cs); }

EdgePath concatenate_paths(const EdgePath& p1, const EdgePath& p2, int i, int j)
{
    const std::size_t t1 = edge_position(p1, i, j), t2 = edge_position(p2, j, i);
    const std::size_t m1 = p1.vertices.size(), m2 = p2.vertices.size();
    EdgePath out;
    for (std::size_t k = 1; k <= m1; ++k)
        out.vertices.push_back(p1.vertices[(t1 + k) % m1]);
    for (std::size_t k = 2; k < m2; ++k)
        out.vertices.push_back(p2.vertices[(t2 + k) % m2]);
    return out;
}

MatrixQ concatenate(const EdgePath& p1, const EdgePath& p2, int i, int j, const CoefficientSystem& cs)
{
    const std::size_t t1 = edge_position(p1, i, j), t2 = edge_position(p2, j, i);
    const std::size_t m1 = p1.vertices.size(), m2 = p2.vertices.size();
    auto w1 = path_walls(p1), w2 = path_walls(p2);
    std::vector<OrientedWall> all = w1;
    all.insert(all.end(), w2.begin(), w2.end());
    TensorBlock source = make_block(all, cs);
    TensorBlock target = path_tensor(concatenate_paths(p1, p2, i, j), cs);
    std::vector<std::size_t> keep;
    for (std::size_t k = 1; k < m1; ++k)
        keep.push_back((t1 + k) % m1);
    for (std::size_t k = 1; k < m2; ++k)
        keep.push_back(m1 + (t2 + k) % m2);
    std::size_t a = t1, b = m1 + t2;
    if (all[a].orientation < 0)
        std::swap(a, b);
    return contraction(source, target, keep, {{a, b}}, cs);
}

EdgePath rotate_path(const EdgePath& p, std::size_t shift)
{
    EdgePath out = p;
    std::rotate(out.vertices.begin(), out.vertices.begin() + static_cast<long>(shift % p.vertices.size()),
                out.vertices.end());
    return out;
}

MatrixQ rotation_map(const EdgePath& p, std::size_t shift, const CoefficientSystem& cs)
{
    TensorBlock source = path_tensor(p, cs);
    TensorBlock target = path_tensor(rotate_path(p, shift), cs);
    const std::size_t m = p.vertices.size();
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < m; ++k)
        keep.push_back((shift + k) % m);
    return contraction(source, target, keep, {}, cs);
}

} // namespace ir
