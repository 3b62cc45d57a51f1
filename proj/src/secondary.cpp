#include "infrared/secondary.hpp"
#include "infrared/matrix.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace ir {

VecQ gkz_vector(const PointConfig& c, const Subdivision& t)
{
    VecQ phi(c.size());
    for (Mask cell : t.cells) {
        if (popcount(cell) != static_cast<int>(c.dim() + 1))
            throw std::invalid_argument("gkz_vector: not a triangulation");
        Rational v = simplex_volume(c, cell);
        for (int w : bits(cell))
            phi[w] += v;
    }
    return phi;
}

bool is_geometric_subdivision(const PointConfig& c, const Subdivision& s)
{
    for (Mask cell : s.cells)
        for (int q : bits(s.parent & ~cell))
            if (in_hull(c, cell, q))
                return false;
    return true;
}

namespace {

using IVec = std::vector<Integer>;

IVec primitive_int(const VecQ& v)
{
    VecQ p = primitive(v);
    IVec out;
    out.reserve(p.size());
    for (const auto& q : p)
        out.push_back(q.get_num());
    return out;
}

Integer idot(const IVec& a, const IVec& b)
{
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) && sgn(b[i]))
            s += a[i] * b[i];
    return s;
}

void make_primitive(IVec& v)
{
    Integer g = 0;
    for (const auto& x : v)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
        for (auto& x : v)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

struct DdRay {
    IVec y;
    Bits zero;
};

// Extreme rays of the pointed cone {y : a_i . y >= 0}, with a of full column rank.
std::vector<DdRay> double_description(const std::vector<IVec>& a)
{
    const std::size_t N = a.size();
    const std::size_t m = a.front().size();
    // Initial simplicial cone from m independent rows.
    EchelonBasis eb(m);
    std::vector<std::size_t> init;
    for (std::size_t i = 0; i < N && init.size() < m; ++i) {
        VecQ q(a[i].begin(), a[i].end());
        if (eb.insert(q))
            init.push_back(i);
    }
    if (init.size() != m)
        throw std::logic_error("double_description: constraints do not have full rank");
    std::vector<VecQ> aug(m, VecQ(2 * m));
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < m; ++c)
            aug[r][c] = a[init[r]][c];
        aug[r][m + r] = 1;
    }
    auto [red, piv] = rref(aug, 2 * m);
    std::vector<DdRay> rays;
    for (std::size_t j = 0; j < m; ++j) {
        VecQ col(m);
        for (std::size_t r = 0; r < m; ++r)
            col[r] = red[r][m + j];
        DdRay ray{primitive_int(col), Bits(N)};
        for (std::size_t r = 0; r < m; ++r)
            if (r != j)
                ray.zero.set(init[r]);
        rays.push_back(std::move(ray));
    }
    std::vector<bool> done(N, false);
    for (auto i : init)
        done[i] = true;
    for (std::size_t i = 0; i < N; ++i) {
        if (done[i])
            continue;
        done[i] = true;
        std::vector<Integer> val(rays.size());
        std::vector<std::size_t> pos, neg;
        std::vector<DdRay> next;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            val[r] = idot(a[i], rays[r].y);
            int s = sgn(val[r]);
            if (s > 0)
                pos.push_back(r);
            else if (s < 0)
                neg.push_back(r);
        }
        if (neg.empty()) {
            for (std::size_t r = 0; r < rays.size(); ++r)
                if (!sgn(val[r]))
                    rays[r].zero.set(i);
            continue;
        }
        for (std::size_t r = 0; r < rays.size(); ++r) {
            if (sgn(val[r]) < 0)
                continue;
            DdRay keep = rays[r];
            if (!sgn(val[r]))
                keep.zero.set(i);
            next.push_back(std::move(keep));
        }
        for (std::size_t p : pos)
            for (std::size_t n : neg) {
                Bits common = rays[p].zero & rays[n].zero;
                if (common.count() + 2 < m)
                    continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
                    if (r != p && r != n && common.subset_of(rays[r].zero))
                        adjacent = false;
                if (!adjacent)
                    continue;
                DdRay nr{IVec(m), common};
                for (std::size_t k = 0; k < m; ++k)
                    nr.y[k] = val[p] * rays[n].y[k] - val[n] * rays[p].y[k];
                make_primitive(nr.y);
                nr.zero.set(i);
                next.push_back(std::move(nr));
            }
        rays = std::move(next);
    }
    return rays;
}

std::vector<int> dropped_points(const PointConfig& c, Mask parent)
{
    std::vector<int> pts = bits(parent);
    pts.resize(c.dim() + 1);
    return pts;
}

Subdivision subdivision_from_facets(const PointConfig& c, const SecondaryPolytope& sp,
                                    const std::vector<std::size_t>& facets)
{
    VecQ psi(c.size());
    for (auto f : facets)
        for (std::size_t i = 0; i < psi.size(); ++i)
            psi[i] += sp.facets[f].normal[i];
    return lower_hull_subdivision(c, sp.parent, psi);
}

} // namespace

std::vector<std::size_t> SecondaryPolytope::faces_of_dim(int k) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (faces[i].dim == k)
            out.push_back(i);
    return out;
}

std::optional<std::size_t> SecondaryPolytope::find(const std::vector<Mask>& cells) const
{
    for (std::size_t i = 0; i < faces.size(); ++i)
        if (faces[i].subdivision.cells == cells)
            return i;
    return std::nullopt;
}

Bits subdivision_to_face(const SecondaryPolytope& sp, const Subdivision& s)
{
    Bits b(sp.triangulations.size());
    for (std::size_t i = 0; i < sp.triangulations.size(); ++i)
        if (refines(sp.triangulations[i], s))
            b.set(i);
    return b;
}

SecondaryPolytope build_secondary(const PointConfig& c, Mask parent, const SecondaryOptions& opt)
{
    SecondaryPolytope sp;
    sp.parent = parent;
    sp.triangulations = enumerate_regular_triangulations(c, parent, {opt.seed, opt.jobs});
    const std::size_t N = sp.triangulations.size();
    for (const auto& t : sp.triangulations)
        sp.gkz.push_back(gkz_vector(c, t));

    // Affine dimension of the GKZ vectors.
    std::vector<VecQ> diffs;
    for (std::size_t i = 1; i < N; ++i) {
        VecQ v(c.size());
        for (std::size_t k = 0; k < v.size(); ++k)
            v[k] = sp.gkz[i][k] - sp.gkz[0][k];
        diffs.push_back(v);
    }
    sp.dim = static_cast<int>(rank_of_rows(diffs));
    const int expected = popcount(parent) - static_cast<int>(c.dim()) - 1;
    if (sp.dim != expected)
        throw std::logic_error("secondary polytope dimension " + std::to_string(sp.dim) + " differs from " +
                               std::to_string(expected));

    const Mask dropped = mask_of(dropped_points(c, parent));
    const std::vector<int> kept = bits(parent & ~dropped);
    const std::size_t k = kept.size();

    if (k > 0) {
        std::vector<IVec> a;
        for (const auto& phi : sp.gkz) {
            VecQ row{Rational(1)};
            for (int p : kept)
                row.push_back(phi[p]);
            a.push_back(primitive_int(row));
        }
        for (auto& ray : double_description(a)) {
            Facet f;
            f.normal = VecQ(c.size());
            for (std::size_t j = 0; j < k; ++j)
                f.normal[kept[j]] = ray.y[j + 1];
            f.offset = -Rational(ray.y[0]);
            f.vertices = Bits(N);
            for (std::size_t v = 0; v < N; ++v) {
                Rational val = dot(f.normal, sp.gkz[v]) - f.offset;
                if (sgn(val) < 0)
                    throw std::logic_error("double description produced an invalid facet");
                if (!sgn(val))
                    f.vertices.set(v);
            }
            sp.facets.push_back(std::move(f));
        }
        std::sort(sp.facets.begin(), sp.facets.end(), [](const Facet& x, const Facet& y) {
            return x.vertices.indices() < y.vertices.indices();
        });
    }

    // Faces, top down. Facets of a face are the maximal proper intersections with facets.
    std::unordered_map<Bits, std::size_t, BitsHash> index;
    std::vector<Face> faces;
    auto add_face = [&](const Bits& v, int dim) {
        auto it = index.find(v);
        if (it != index.end())
            return it->second;
        Face f;
        f.dim = dim;
        f.vertices = v;
        for (std::size_t i = 0; i < sp.facets.size(); ++i)
            if (v.subset_of(sp.facets[i].vertices))
                f.facets.push_back(i);
        faces.push_back(std::move(f));
        index.emplace(v, faces.size() - 1);
        return faces.size() - 1;
    };
    add_face(Bits::all(N), sp.dim);
    if (opt.full_lattice) {
        for (std::size_t cur = 0; cur < faces.size(); ++cur) {
            if (faces[cur].dim == 0)
                continue;
            const Bits fv = faces[cur].vertices;
            std::vector<Bits> cand;
            for (const auto& facet : sp.facets) {
                if (fv.subset_of(facet.vertices))
                    continue;
                Bits x = fv & facet.vertices;
                if (!x.none())
                    cand.push_back(x);
            }
            std::sort(cand.begin(), cand.end());
            cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
            const int dim = faces[cur].dim;
            for (std::size_t i = 0; i < cand.size(); ++i) {
                bool maximal = true;
                for (std::size_t j = 0; j < cand.size() && maximal; ++j)
                    if (j != i && cand[i].subset_of(cand[j]))
                        maximal = false;
                if (!maximal)
                    continue;
                std::size_t child = add_face(cand[i], dim - 1);
                if (faces[child].dim != dim - 1)
                    throw std::logic_error("face lattice is not graded");
                faces[cur].children.push_back(child);
                faces[child].parents.push_back(cur);
            }
        }
    } else {
        for (const auto& facet : sp.facets) {
            std::size_t f = add_face(facet.vertices, sp.dim - 1);
            faces[0].children.push_back(f);
            faces[f].parents.push_back(0);
        }
        for (std::size_t v = 0; v < N; ++v) {
            Bits b(N);
            b.set(v);
            add_face(b, 0);
        }
    }

    for (auto& f : faces) {
        f.subdivision = f.vertices.count() == 1 && f.dim == 0 && sp.dim > 0
                            ? sp.triangulations[f.vertices.indices()[0]]
                            : subdivision_from_facets(c, sp, f.facets);
        f.geometric = is_geometric_subdivision(c, f.subdivision);
    }
    if (sp.dim == 0)
        faces[0].subdivision = sp.triangulations[0];

    // Canonical order: by dimension, then by subdivision.
    std::vector<std::size_t> order(faces.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (faces[x].dim != faces[y].dim)
            return faces[x].dim < faces[y].dim;
        return subdivision_less(faces[x].subdivision, faces[y].subdivision);
    });
    std::vector<std::size_t> rank_of(faces.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        rank_of[order[i]] = i;
    for (std::size_t i : order) {
        Face f = faces[i];
        for (auto& ch : f.children)
            ch = rank_of[ch];
        for (auto& p : f.parents)
            p = rank_of[p];
        std::sort(f.children.begin(), f.children.end());
        std::sort(f.parents.begin(), f.parents.end());
        sp.faces.push_back(std::move(f));
    }
    sp.top = rank_of[0];

    // Each face's subdivision must be refined by exactly the face's vertices.
    for (const auto& f : sp.faces)
        if (!(subdivision_to_face(sp, f.subdivision) == f.vertices))
            throw std::logic_error("face and subdivision disagree");
    return sp;
}

Subdivision face_to_subdivision(const PointConfig& c, const SecondaryPolytope& sp, std::size_t face)
{
    const Face& f = sp.faces.at(face);
    if (sp.dim == 0)
        return sp.triangulations[0];
    return subdivision_from_facets(c, sp, f.facets);
}

std::vector<Subdivision> coarse_subdivisions_of(const PointConfig& c, Mask parent, const SecondaryOptions& opt)
{
    SecondaryOptions o = opt;
    o.full_lattice = false;
    SecondaryPolytope sp = build_secondary(c, parent, o);
    std::vector<Subdivision> out;
    for (const auto& facet : sp.facets) {
        VecQ psi = facet.normal;
        out.push_back(lower_hull_subdivision(c, parent, psi));
    }
    std::sort(out.begin(), out.end(), subdivision_less);
    return out;
}

const SecondaryPolytope& SecondaryCache::get(Mask parent)
{
    auto it = memo_.find(parent);
    if (it == memo_.end())
        it = memo_.emplace(parent, std::make_unique<SecondaryPolytope>(build_secondary(c_, parent, opt_))).first;
    return *it->second;
}

FactorizationReport verify_factorization(const PointConfig& c, const SecondaryPolytope& sp, std::size_t face,
                                         SecondaryCache& cache)
{
    FactorizationReport rep;
    const Face& F = sp.faces.at(face);
    const auto& cells = F.subdivision.cells;
    std::vector<const SecondaryPolytope*> factors;
    std::size_t product = 1;
    int dim_sum = 0;
    for (Mask cell : cells) {
        factors.push_back(&cache.get(cell));
        rep.factor_dims.push_back(factors.back()->dim);
        product *= factors.back()->faces.size();
        dim_sum += factors.back()->dim;
    }
    if (dim_sum != F.dim) {
        rep.message = "factor dimensions do not add up to the face dimension";
        return rep;
    }
    // The interval below F, mapped to tuples of faces of the factors.
    std::vector<std::size_t> interval;
    for (std::size_t g = 0; g < sp.faces.size(); ++g)
        if (sp.faces[g].vertices.subset_of(F.vertices))
            interval.push_back(g);
    rep.interval_size = interval.size();
    std::map<std::vector<std::size_t>, std::size_t> image;
    std::vector<std::vector<std::size_t>> tuple_of(interval.size());
    for (std::size_t gi = 0; gi < interval.size(); ++gi) {
        const Face& G = sp.faces[interval[gi]];
        std::vector<std::size_t> tuple;
        int dims = 0;
        for (std::size_t k = 0; k < cells.size(); ++k) {
            std::vector<Mask> part;
            for (Mask m : G.subdivision.cells)
                if ((m & cells[k]) == m)
                    part.push_back(m);
            auto id = factors[k]->find(part);
            if (!id) {
                rep.message = "restriction of a face is not a face of a factor";
                return rep;
            }
            tuple.push_back(*id);
            dims += factors[k]->faces[*id].dim;
        }
        if (dims != G.dim) {
            rep.message = "dimension is not additive on a face";
            return rep;
        }
        if (!image.emplace(tuple, gi).second) {
            rep.message = "restriction map is not injective";
            return rep;
        }
        tuple_of[gi] = tuple;
    }
    if (image.size() != product) {
        rep.message = "restriction map is not surjective";
        return rep;
    }
    for (std::size_t x = 0; x < interval.size(); ++x)
        for (std::size_t y = 0; y < interval.size(); ++y) {
            bool below = sp.faces[interval[x]].vertices.subset_of(sp.faces[interval[y]].vertices);
            bool below_factors = true;
            for (std::size_t k = 0; k < cells.size() && below_factors; ++k)
                below_factors = factors[k]->faces[tuple_of[x][k]].vertices.subset_of(
                    factors[k]->faces[tuple_of[y][k]].vertices);
            if (below != below_factors) {
                rep.message = "restriction map does not preserve the order";
                return rep;
            }
        }
    rep.ok = true;
    return rep;
}

DualWeb dual_web(const PointConfig& c, const Subdivision& s)
{
    if (c.dim() != 2)
        throw std::invalid_argument("dual_web: only planar configurations");
    if (!s.certificate)
        throw std::invalid_argument("dual_web: subdivision needs a certificate");
    const VecQ& psi = *s.certificate;
    DualWeb w;
    for (Mask cell : s.cells) {
        auto p = bits(cell);
        // psi = alpha x + beta y + gamma on the first three points.
        std::vector<VecQ> rows;
        for (int k = 0; k < 3; ++k)
            rows.push_back({c.coords(p[k])[0], c.coords(p[k])[1], Rational(1), psi[p[k]]});
        auto [red, piv] = rref(rows, 4);
        Rational alpha = red[0][3], beta = red[1][3];
        w.vertices.push_back({cell, {-beta, alpha}});
    }
    for (std::size_t i = 0; i < s.cells.size(); ++i) {
        Hull h = convex_hull(c, s.cells[i]);
        const auto& cyc = h.boundary;
        for (std::size_t e = 0; e < cyc.size(); ++e) {
            int a = cyc[e], b = cyc[(e + 1) % cyc.size()];
            Mask wall = bit(a) | bit(b);
            std::optional<std::size_t> other;
            for (std::size_t j = 0; j < s.cells.size(); ++j)
                if (j != i && (s.cells[j] & wall) == wall)
                    other = j;
            if (other) {
                if (i < *other)
                    w.edges.push_back({i, *other, a, b});
            } else {
                // Outward normal of the counter-clockwise edge a -> b, rotated by 90 degrees.
                Rational dx = c.coords(b)[0] - c.coords(a)[0], dy = c.coords(b)[1] - c.coords(a)[1];
                VecQ outward{dy, -dx};
                w.rays.push_back({i, a, b, {-outward[1], outward[0]}});
            }
        }
    }
    return w;
}

bool web_condition_holds(const PointConfig& c, const Subdivision& s, const DualWeb& w)
{
    for (const auto& e : w.edges) {
        // Undo the rotation to get slopes.
        const VecQ& u = w.vertices[e.from].position;
        const VecQ& v = w.vertices[e.to].position;
        VecQ slope_diff{v[1] - u[1], -(v[0] - u[0])};
        VecQ wall{c.coords(e.wall_j)[0] - c.coords(e.wall_i)[0], c.coords(e.wall_j)[1] - c.coords(e.wall_i)[1]};
        if (sgn(dot(slope_diff, wall)))
            return false;
        // The slope jump points into the second cell.
        Mask to_cell = s.cells[e.to];
        int q = lowest(to_cell & ~(bit(e.wall_i) | bit(e.wall_j)));
        VecQ into{c.coords(q)[0] - c.coords(e.wall_i)[0], c.coords(q)[1] - c.coords(e.wall_i)[1]};
        if (sgn(dot(slope_diff, into)) <= 0)
            return false;
    }
    return true;
}

} // namespace ir
