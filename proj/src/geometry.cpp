#include "infrared/geometry.hpp"
#include "infrared/matrix.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace ir {

namespace {

// Calls f on every k-subset of the set bits of s, as a sorted index vector.
void for_each_k_subset(Mask s, int k, const std::function<bool(const std::vector<int>&)>& f)
{
    std::vector<int> idx = bits(s);
    const int n = static_cast<int>(idx.size());
    if (k > n || k < 0)
        return;
    std::vector<int> pos(k);
    for (int i = 0; i < k; ++i)
        pos[i] = i;
    std::vector<int> cur(k);
    for (;;) {
        for (int i = 0; i < k; ++i)
            cur[i] = idx[pos[i]];
        if (!f(cur))
            return;
        int i = k - 1;
        while (i >= 0 && pos[i] == n - k + i)
            --i;
        if (i < 0)
            return;
        ++pos[i];
        for (int j = i + 1; j < k; ++j)
            pos[j] = pos[j - 1] + 1;
    }
}

} // namespace

PointConfig::PointConfig(std::size_t d, std::vector<Point> points, std::optional<VecQ> infinity, bool sort_by_label)
    : d_(d), points_(std::move(points)), infinity_(std::move(infinity))
{
    if (d_ == 0)
        throw std::invalid_argument("dimension must be positive");
    if (points_.size() + 1 > kMaxPoints)
        throw std::invalid_argument("too many points");
    std::set<std::string> seen;
    for (const auto& p : points_) {
        if (p.label.empty())
            throw std::invalid_argument("empty point label");
        if (p.coords.size() != d_)
            throw std::invalid_argument("point " + p.label + " has wrong dimension");
        if (!seen.insert(p.label).second)
            throw std::invalid_argument("duplicate label " + p.label);
    }
    if (infinity_) {
        if (infinity_->size() != d_)
            throw std::invalid_argument("infinity direction has wrong dimension");
        if (std::all_of(infinity_->begin(), infinity_->end(), [](const Rational& q) { return sgn(q) == 0; }))
            throw std::invalid_argument("infinity direction must be nonzero");
        if (seen.count(kInfinityLabel))
            throw std::invalid_argument("label '" + kInfinityLabel + "' is reserved for the point at infinity");
    }
    if (sort_by_label)
        std::sort(points_.begin(), points_.end(), [](const Point& a, const Point& b) { return a.label < b.label; });

    const std::size_t n = extended_size();
    std::size_t cells = 1;
    for (std::size_t i = 0; i <= d_; ++i)
        cells *= n;
    if (n <= 16 && d_ <= 3 && n >= d_ + 1) {
        base_ = n;
        chirotope_.assign(cells, 0);
        Mask everything = extended_all();
        for_each_k_subset(everything, static_cast<int>(d_ + 1), [&](const std::vector<int>& t) {
            std::size_t key = 0;
            for (std::size_t i = d_ + 1; i-- > 0;)
                key = key * base_ + static_cast<std::size_t>(t[i]);
            chirotope_[key] = static_cast<signed char>(orient_uncached(t));
            return true;
        });
    }
}

std::string PointConfig::label(std::size_t i) const
{
    if (is_infinity(i))
        return kInfinityLabel;
    return points_.at(i).label;
}

std::optional<std::size_t> PointConfig::index_of(const std::string& label) const
{
    if (has_infinity() && label == kInfinityLabel)
        return infinity_index();
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (points_[i].label == label)
            return i;
    return std::nullopt;
}

std::vector<std::string> PointConfig::labels(Mask m) const
{
    std::vector<std::string> out;
    for (int i : bits(m))
        out.push_back(label(static_cast<std::size_t>(i)));
    return out;
}

Mask PointConfig::mask_of_labels(const std::vector<std::string>& labels) const
{
    Mask m = 0;
    for (const auto& l : labels) {
        auto i = index_of(l);
        if (!i)
            throw std::invalid_argument("unknown label " + l);
        m |= bit(static_cast<int>(*i));
    }
    return m;
}

Rational affine_determinant(const PointConfig& c, const std::vector<int>& refs)
{
    const std::size_t d = c.dim();
    if (refs.size() != d + 1)
        throw std::invalid_argument("orient needs d+1 arguments");
    std::vector<VecQ> m;
    int infinities = 0;
    for (int r : refs) {
        VecQ row(d + 1);
        if (c.is_infinity(static_cast<std::size_t>(r))) {
            ++infinities;
            row[0] = 0;
            for (std::size_t k = 0; k < d; ++k)
                row[k + 1] = c.infinity_direction()[k];
        } else {
            row[0] = 1;
            for (std::size_t k = 0; k < d; ++k)
                row[k + 1] = c.coords(static_cast<std::size_t>(r))[k];
        }
        m.push_back(std::move(row));
    }
    if (infinities > 1)
        return 0;
    return determinant(m);
}

int PointConfig::orient_uncached(const std::vector<int>& refs) const
{
    return sgn(affine_determinant(*this, refs));
}

int PointConfig::orient(const std::vector<int>& refs) const
{
    if (refs.size() != d_ + 1)
        throw std::invalid_argument("orient needs d+1 arguments");
    if (chirotope_.empty())
        return orient_uncached(refs);
    int t[8];
    for (std::size_t i = 0; i <= d_; ++i) {
        if (refs[i] < 0 || static_cast<std::size_t>(refs[i]) >= base_)
            throw std::out_of_range("orient: bad point index");
        t[i] = refs[i];
    }
    int parity = 1;
    for (std::size_t i = 1; i <= d_; ++i)
        for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
            if (t[j - 1] == t[j])
                return 0;
            std::swap(t[j - 1], t[j]);
            parity = -parity;
        }
    std::size_t key = 0;
    for (std::size_t i = d_ + 1; i-- > 0;)
        key = key * base_ + static_cast<std::size_t>(t[i]);
    return parity * chirotope_[key];
}

GeneralPositionReport check_general_position(const PointConfig& c)
{
    GeneralPositionReport rep;
    const int d = static_cast<int>(c.dim());
    if (c.size() < c.dim() + 1) {
        rep.pass = false;
        rep.violations.push_back({"fewer than d+1 points"});
        return rep;
    }
    for_each_k_subset(c.all(), d + 1, [&](const std::vector<int>& t) {
        if (c.orient(t) == 0) {
            rep.pass = false;
            rep.violations.push_back(c.labels(mask_of(t)));
        }
        return true;
    });
    if (c.has_infinity()) {
        for_each_k_subset(c.all(), d, [&](const std::vector<int>& t) {
            std::vector<int> u = t;
            u.push_back(static_cast<int>(c.infinity_index()));
            if (c.orient(u) == 0) {
                rep.pass = false;
                rep.violations.push_back(c.labels(mask_of(u)));
            }
            return true;
        });
    }
    return rep;
}

bool in_open_simplex(const PointConfig& c, const std::vector<int>& s, int q)
{
    const int o = c.orient(s);
    if (o == 0)
        return false;
    std::vector<int> t = s;
    for (std::size_t i = 0; i < s.size(); ++i) {
        t[i] = q;
        if (c.orient(t) != o)
            return false;
        t[i] = s[i];
    }
    return true;
}

bool in_hull(const PointConfig& c, Mask s, int q)
{
    if (has(s, q))
        return true;
    bool found = false;
    for_each_k_subset(s, static_cast<int>(c.dim() + 1), [&](const std::vector<int>& t) {
        found = in_open_simplex(c, t, q);
        return !found;
    });
    return found;
}

Mask hull_vertices(const PointConfig& c, Mask s)
{
    Mask v = 0;
    for (int i : bits(s))
        if (!in_hull(c, s & ~bit(i), i))
            v |= bit(i);
    return v;
}

Hull convex_hull(const PointConfig& c, Mask s)
{
    const int d = static_cast<int>(c.dim());
    if (popcount(s) < d + 1)
        throw std::invalid_argument("convex_hull: subset is lower-dimensional");
    bool spans = false;
    for_each_k_subset(s, d + 1, [&](const std::vector<int>& t) {
        spans = c.orient(t) != 0;
        return !spans;
    });
    if (!spans)
        throw std::invalid_argument("convex_hull: subset is lower-dimensional");
    Hull h;
    h.vertices = hull_vertices(c, s);
    for_each_k_subset(h.vertices, d, [&](const std::vector<int>& f) {
        int side = 0;
        bool ok = true;
        std::vector<int> t = f;
        t.push_back(0);
        for (int x : bits(s & ~mask_of(f))) {
            t.back() = x;
            int o = c.orient(t);
            if (o == 0 || (side != 0 && o != side)) {
                ok = false;
                break;
            }
            side = o;
        }
        if (ok && side != 0) {
            h.facets.push_back(f);
            h.facet_orientation.push_back(side);
        }
        return true;
    });
    if (d == 2) {
        // Successor of v: the vertex w with every other point to the left of v -> w.
        std::vector<int> vs = bits(h.vertices);
        int start = vs.front();
        int v = start;
        do {
            h.boundary.push_back(v);
            int next = -1;
            for (int w : vs) {
                if (w == v)
                    continue;
                bool left = true;
                for (int x : bits(s & ~bit(v) & ~bit(w)))
                    if (c.orient({v, w, x}) <= 0) {
                        left = false;
                        break;
                    }
                if (left) {
                    next = w;
                    break;
                }
            }
            if (next < 0)
                throw std::logic_error("convex_hull: boundary walk failed");
            v = next;
        } while (v != start && h.boundary.size() <= vs.size());
        if (h.boundary.size() != vs.size())
            throw std::logic_error("convex_hull: boundary walk inconsistent");
    }
    return h;
}

Circuit circuit_of(const PointConfig& c, Mask support)
{
    const std::size_t d = c.dim();
    std::vector<int> z = bits(support);
    if (z.size() != d + 2)
        throw std::invalid_argument("circuit support must have d+2 points");
    std::vector<VecQ> rows(d + 1, VecQ(z.size()));
    for (std::size_t j = 0; j < z.size(); ++j) {
        rows[0][j] = 1;
        for (std::size_t k = 0; k < d; ++k)
            rows[k + 1][j] = c.coords(static_cast<std::size_t>(z[j]))[k];
    }
    auto ker = kernel_basis(MatrixQ::from_dense(rows));
    if (ker.size() != 1)
        throw std::invalid_argument("circuit support is not in general position");
    VecQ dep = primitive(ker[0]);
    Circuit circ;
    circ.support = support;
    Mask pos = 0, neg = 0;
    for (std::size_t j = 0; j < z.size(); ++j) {
        if (sgn(dep[j]) > 0)
            pos |= bit(z[j]);
        else if (sgn(dep[j]) < 0)
            neg |= bit(z[j]);
    }
    // Convention: the positive part is the larger side; on a tie, the side holding the
    // smallest index.
    bool flip = popcount(neg) > popcount(pos) || (popcount(neg) == popcount(pos) && lowest(neg) < lowest(pos));
    if (flip) {
        std::swap(pos, neg);
        for (auto& q : dep)
            q = -q;
    }
    circ.plus = pos;
    circ.minus = neg;
    for (const auto& q : dep)
        circ.dependency.push_back(q.get_num());
    return circ;
}

std::vector<Circuit> enumerate_circuits(const PointConfig& c, Mask within)
{
    std::vector<Circuit> out;
    for_each_k_subset(within & c.all(), static_cast<int>(c.dim() + 2), [&](const std::vector<int>& z) {
        out.push_back(circuit_of(c, mask_of(z)));
        return true;
    });
    std::sort(out.begin(), out.end(), [](const Circuit& a, const Circuit& b) { return mask_less(a.support, b.support); });
    return out;
}

std::vector<Circuit> enumerate_circuits(const PointConfig& c) { return enumerate_circuits(c, c.all()); }

bool is_geometric(const PointConfig& c, Mask marking)
{
    for (int q : bits(c.all() & ~marking))
        if (in_hull(c, marking, q))
            return false;
    return true;
}

static std::vector<MarkedPolytope> enumerate_impl(const PointConfig& c, bool include_infinity, bool geometric_only)
{
    const std::size_t n = include_infinity && c.has_infinity() ? c.extended_size() : c.size();
    const int need = static_cast<int>(c.dim() + 1);
    std::vector<MarkedPolytope> out;
    for (std::uint64_t m = 1; m < (std::uint64_t(1) << n); ++m) {
        Mask s = static_cast<Mask>(m);
        if (popcount(s) < need)
            continue;
        MarkedPolytope p;
        p.marking = s;
        p.geometric = is_geometric(c, s);
        if (geometric_only && !p.geometric)
            continue;
        p.vertices = hull_vertices(c, s);
        p.infinite = c.has_infinity() && has(s, static_cast<int>(c.infinity_index()));
        out.push_back(p);
    }
    std::sort(out.begin(), out.end(),
              [](const MarkedPolytope& a, const MarkedPolytope& b) { return mask_less(a.marking, b.marking); });
    return out;
}

std::vector<MarkedPolytope> enumerate_subpolytopes(const PointConfig& c, bool include_infinity)
{
    return enumerate_impl(c, include_infinity, true);
}

std::vector<MarkedPolytope> enumerate_marked_subpolytopes(const PointConfig& c, bool include_infinity)
{
    return enumerate_impl(c, include_infinity, false);
}

Rational simplex_volume(const PointConfig& c, Mask simplex)
{
    std::vector<int> v = bits(simplex);
    if (v.size() != c.dim() + 1)
        throw std::invalid_argument("simplex_volume: need d+1 points");
    Rational det = affine_determinant(c, v);
    return abs(det) / factorial(static_cast<unsigned>(c.dim()));
}

} // namespace ir

#include <random>

namespace ir {

PointConfig random_config(std::size_t d, std::size_t n, std::uint64_t seed, int range, std::optional<VecQ> infinity)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(0, range - 1);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<Point> pts;
        for (std::size_t i = 0; i < n; ++i) {
            VecQ x(d);
            for (auto& q : x)
                q = coord(rng);
            std::string label = "p" + std::string(i < 10 ? "0" : "") + std::to_string(i);
            pts.push_back({label, x});
        }
        PointConfig c(d, pts, infinity);
        if (check_general_position(c).pass)
            return c;
    }
    throw std::runtime_error("random_config: could not draw a configuration in general position");
}

} // namespace ir

namespace ir {

Rational polytope_volume(const PointConfig& c, Mask s)
{
    Hull h = convex_hull(c, s);
    const int v0 = lowest(h.vertices);
    Rational vol = 0;
    for (const auto& f : h.facets) {
        Mask fm = mask_of(f);
        if (has(fm, v0))
            continue;
        vol += simplex_volume(c, fm | bit(v0));
    }
    return vol;
}

VecQ barycentric(const PointConfig& c, const std::vector<int>& b, int q)
{
    const Rational base = affine_determinant(c, b);
    if (!sgn(base))
        throw std::invalid_argument("barycentric: degenerate simplex");
    VecQ lambda(b.size());
    std::vector<int> t = b;
    for (std::size_t i = 0; i < b.size(); ++i) {
        t[i] = q;
        lambda[i] = affine_determinant(c, t) / base;
        t[i] = b[i];
    }
    return lambda;
}

} // namespace ir
