#include "infrared/linfty.hpp"
#include "infrared/parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace ir {

std::string cell_name(const PointConfig& c, Mask m)
{
    std::string s;
    for (int i : bits(m)) {
        if (!s.empty())
            s += ',';
        s += c.label(i);
    }
    return "{" + s + "}";
}

OrientationClass orientation_class(const PointConfig& c, Mask marking)
{
    const auto pts = bits(marking);
    const std::size_t n = pts.size();
    std::vector<VecQ> aff(c.dim() + 1, VecQ(n));
    for (std::size_t k = 0; k < n; ++k) {
        aff[0][k] = 1;
        for (std::size_t j = 0; j < c.dim(); ++j)
            aff[j + 1][k] = c.coords(pts[k])[j];
    }
    OrientationClass oc;
    oc.owner = marking;
    auto ker = kernel_basis(MatrixQ::from_dense(aff, n));
    if (!ker.empty())
        oc.basis = rref(ker, n).first;
    return oc;
}

int face_dim(const PointConfig& c, const Subdivision& s)
{
    int k = 0;
    for (Mask cell : s.cells)
        k += popcount(cell) - static_cast<int>(c.dim()) - 1;
    return k;
}

namespace {

// Product basis of a face, in coordinates indexed by the positions of the parent's points.
std::vector<VecQ> face_basis(const PointConfig& c, const Subdivision& s)
{
    const auto parent = bits(s.parent);
    std::vector<VecQ> out;
    for (Mask cell : s.cells) {
        const auto pts = bits(cell);
        for (const auto& v : orientation_class(c, cell).basis) {
            VecQ e(parent.size());
            for (std::size_t k = 0; k < pts.size(); ++k) {
                auto at = std::lower_bound(parent.begin(), parent.end(), pts[k]);
                e[static_cast<std::size_t>(at - parent.begin())] = v[k];
            }
            out.push_back(std::move(e));
        }
    }
    return out;
}

} // namespace

int incidence_sign(const PointConfig& c, const Subdivision& fine, const Subdivision& coarse)
{
    if (fine.parent != coarse.parent || !refines(fine, coarse) || face_dim(c, fine) + 1 != face_dim(c, coarse))
        throw std::invalid_argument("incidence_sign: not a facet pair");
    if (!fine.certificate)
        throw std::invalid_argument("incidence_sign: the smaller face needs a certificate");
    const auto parent = bits(fine.parent);
    const std::size_t n = parent.size();
    auto bc = face_basis(c, coarse);
    auto bf = face_basis(c, fine);
    auto comp = kernel_basis(MatrixQ::from_dense(bc, n));
    VecQ out(n);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = -(*fine.certificate)[parent[k]];
    std::vector<VecQ> m1{out};
    m1.insert(m1.end(), bf.begin(), bf.end());
    m1.insert(m1.end(), comp.begin(), comp.end());
    std::vector<VecQ> m2 = bc;
    m2.insert(m2.end(), comp.begin(), comp.end());
    const int s1 = sign(determinant(m1)), s2 = sign(determinant(m2));
    if (!s1 || !s2)
        throw std::logic_error("incidence_sign: certificate is not transversal to the facet");
    return s1 * s2;
}

PointConfig reflected(const PointConfig& c)
{
    std::vector<Point> pts = c.points();
    for (auto& p : pts)
        p.coords[0] = -p.coords[0];
    std::optional<VecQ> inf;
    if (c.has_infinity()) {
        inf = c.infinity_direction();
        (*inf)[0] = -(*inf)[0];
    }
    return PointConfig(c.dim(), std::move(pts), inf, false);
}

std::vector<const TableEntry*> StructureTables::of_arity(std::size_t n) const
{
    std::vector<const TableEntry*> out;
    for (const auto& e : entries)
        if (e.arity() == n)
            out.push_back(&e);
    return out;
}

std::size_t StructureTables::max_arity() const
{
    std::size_t m = 0;
    for (const auto& e : entries)
        m = std::max(m, e.arity());
    return m;
}

namespace {

// Coefficient of a coarse subdivision in the generator images: the incidence sign, the
// copairings on interior walls, and the Koszul sign of regrouping the orientation and
// coefficient letters into cell blocks.
MatrixQ entry_coefficient(const StructureTables& t, const Subdivision& sub, int sign, const CoefficientSystem& cs)
{
    const TensorBlock& out = t.blocks.at(sub.parent);
    const std::size_t n = sub.cells.size();
    std::vector<const TensorBlock*> cells;
    for (Mask cell : sub.cells)
        cells.push_back(&t.blocks.at(cell));
    if (t.trivial_coefficients) {
        MatrixQ m(1, 1);
        m.set(0, 0, sign);
        return m;
    }
    std::vector<Mask> interior;
    for (auto* b : cells)
        for (const auto& w : b->walls)
            if (std::find(out.walls.begin(), out.walls.end(), w) == out.walls.end() &&
                std::find(interior.begin(), interior.end(), w.wall) == interior.end())
                interior.push_back(w.wall);
    std::sort(interior.begin(), interior.end(), mask_less);

    // Source layout: n orientation letters, 2 letters per interior wall, then the output block.
    const std::size_t base_pairs = n;
    const std::size_t base_out = n + 2 * interior.size();
    struct Slot {
        std::size_t source;
        bool interior_plus;
        bool interior_minus;
        std::size_t wall; // interior index or output wall index
    };
    std::vector<std::size_t> order;
    std::vector<Slot> slots; // target letters that are coefficient letters, in target order
    std::vector<std::size_t> cell_offsets;
    for (std::size_t v = 0; v < n; ++v) {
        order.push_back(v);
        for (const auto& w : cells[v]->walls) {
            auto at = std::find(out.walls.begin(), out.walls.end(), w);
            Slot s{};
            if (at != out.walls.end()) {
                s.wall = static_cast<std::size_t>(at - out.walls.begin());
                s.source = base_out + s.wall;
            } else {
                s.wall = static_cast<std::size_t>(std::find(interior.begin(), interior.end(), w.wall) - interior.begin());
                s.interior_plus = w.orientation > 0;
                s.interior_minus = !s.interior_plus;
                s.source = base_pairs + 2 * s.wall + (s.interior_plus ? 0 : 1);
            }
            order.push_back(s.source);
            slots.push_back(s);
        }
    }
    std::vector<std::size_t> col_dims;
    std::size_t cols = 1;
    for (auto* b : cells)
        cols *= b->dim();
    MatrixQ m(out.dim(), cols);

    std::vector<std::vector<std::pair<std::pair<std::size_t, std::size_t>, Rational>>> choices;
    for (Mask w : interior) {
        std::vector<std::pair<std::pair<std::size_t, std::size_t>, Rational>> opts;
        const MatrixQ& q = cs.copairing(w);
        for (std::size_t k = 0; k < q.rows(); ++k)
            for (const auto& e : q.row(k))
                opts.push_back({{k, e.col}, e.value});
        choices.push_back(std::move(opts));
    }
    const std::size_t source_len = base_out + out.walls.size();
    std::vector<int> deg(source_len, 0);
    for (std::size_t v = 0; v < n; ++v)
        deg[v] = t.sigma_dim.at(sub.cells[v]);
    std::vector<std::size_t> pick(interior.size(), 0);
    for (std::size_t beta = 0; beta < out.dim(); ++beta) {
        auto bdig = out.digits(beta);
        for (std::size_t w = 0; w < out.walls.size(); ++w)
            deg[base_out + w] = out.degrees[w][bdig[w]];
        std::fill(pick.begin(), pick.end(), 0);
        for (;;) {
            Rational value = sign;
            for (std::size_t i = 0; i < interior.size(); ++i) {
                const auto& [kl, q] = choices[i][pick[i]];
                value *= q;
                auto pd = cs.degrees(interior[i], 1);
                deg[base_pairs + 2 * i] = pd[kl.first];
                deg[base_pairs + 2 * i + 1] = -pd[kl.second];
            }
            if (koszul_sign(deg, order) < 0)
                value = -value;
            std::size_t col = 0, slot = 0;
            for (std::size_t v = 0; v < n; ++v) {
                std::vector<std::size_t> dg;
                for (std::size_t w = 0; w < cells[v]->walls.size(); ++w, ++slot) {
                    const Slot& s = slots[slot];
                    if (s.interior_plus)
                        dg.push_back(choices[s.wall][pick[s.wall]].first.first);
                    else if (s.interior_minus)
                        dg.push_back(choices[s.wall][pick[s.wall]].first.second);
                    else
                        dg.push_back(bdig[s.wall]);
                }
                col = col * cells[v]->dim() + cells[v]->index(dg);
            }
            m.add(beta, col, value);
            std::size_t i = 0;
            while (i < pick.size() && ++pick[i] == choices[i].size())
                pick[i++] = 0;
            if (i == pick.size())
                break;
        }
    }
    return m;
}

bool entry_less(const TableEntry& a, const TableEntry& b)
{
    if (a.arity() != b.arity())
        return a.arity() < b.arity();
    if (a.inputs != b.inputs)
        return cells_less(a.inputs, b.inputs);
    return mask_less(a.output, b.output);
}

} // namespace

StructureTables build_structure_tables(const PointConfig& c0, const TableOptions& opt)
{
    if (c0.has_infinity())
        throw std::invalid_argument("structure tables need a concrete configuration");
    const PointConfig c = opt.flip_orientation ? reflected(c0) : c0;
    static const CoefficientSystem trivial;
    const CoefficientSystem& cs = opt.coefficients ? *opt.coefficients : trivial;
    const int d = static_cast<int>(c.dim());

    StructureTables t;
    t.variant = opt.variant;
    t.flipped = opt.flip_orientation;
    t.trivial_coefficients = cs.trivial();
    for (Mask m = 1; m != 0 && m <= c.all(); ++m) {
        if (popcount(m) < d + 1)
            continue;
        if (opt.variant == Variant::geometric && !is_geometric(c, m))
            continue;
        t.generators.push_back(m);
    }
    std::sort(t.generators.begin(), t.generators.end(), mask_less);
    for (Mask m : t.generators) {
        t.sigma_dim[m] = popcount(m) - d - 1;
        t.blocks[m] = boundary_tensor(c, m, cs);
    }

    std::vector<std::vector<TableEntry>> slots(t.generators.size());
    parallel_for(t.generators.size(), opt.jobs, [&](std::size_t gi) {
        const Mask m = t.generators[gi];
        if (t.sigma_dim.at(m) == 0)
            return;
        SecondaryOptions so;
        so.seed = opt.seed;
        so.full_lattice = false;
        SecondaryPolytope sp = build_secondary(c, m, so);
        Subdivision whole{m, {m}, std::nullopt};
        for (const auto& f : sp.facets) {
            Subdivision sub = lower_hull_subdivision(c, m, f.normal);
            bool keep = true;
            for (Mask cell : sub.cells)
                keep = keep && t.sigma_dim.count(cell);
            if (!keep)
                continue;
            TableEntry e;
            e.inputs = sub.cells;
            e.output = m;
            e.sign = incidence_sign(c, sub, whole);
            e.coefficient = entry_coefficient(t, sub, e.sign, cs);
            slots[gi].push_back(std::move(e));
        }
    });
    for (auto& s : slots)
        for (auto& e : s)
            t.entries.push_back(std::move(e));
    std::sort(t.entries.begin(), t.entries.end(), entry_less);
    return t;
}

SymmetricModel symmetric_model(const StructureTables& t)
{
    SymmetricModel sm;
    for (Mask g : t.generators) {
        const TensorBlock& b = t.blocks.at(g);
        for (std::size_t beta = 0; beta < b.dim(); ++beta) {
            auto id = sm.engine.add_generator(-t.sigma_dim.at(g) - b.degree(beta));
            sm.generator.emplace_back(g, beta);
            sm.id[{g, beta}] = id;
        }
    }
    std::map<std::pair<Mask, std::size_t>, Poly> images;
    for (const auto& e : t.entries) {
        std::vector<std::size_t> dims;
        for (Mask cell : e.inputs)
            dims.push_back(t.blocks.at(cell).dim());
        for (std::size_t r = 0; r < e.coefficient.rows(); ++r) {
            Poly& img = images[{e.output, r}];
            for (const auto& entry : e.coefficient.row(r)) {
                Word w(e.inputs.size());
                std::size_t col = entry.col;
                for (std::size_t v = e.inputs.size(); v-- > 0;) {
                    w[v] = sm.id.at({e.inputs[v], col % dims[v]});
                    col /= dims[v];
                }
                sm.engine.add_term(img, w, entry.value);
            }
        }
    }
    for (auto& [key, img] : images)
        sm.engine.set_image(sm.id.at(key), std::move(img));
    return sm;
}

DSquaredReport verify_d_squared(const PointConfig& c, const StructureTables& t, unsigned jobs)
{
    SymmetricModel sm = symmetric_model(t);
    const std::size_t n = sm.engine.size();
    std::vector<Poly> residual(n);
    parallel_for(n, jobs, [&](std::size_t g) {
        residual[g] = sm.engine.apply(sm.engine.image(static_cast<std::uint32_t>(g)));
    });
    DSquaredReport rep;
    rep.generators = n;
    for (std::size_t g = 0; g < n; ++g) {
        rep.image_terms += sm.engine.image(static_cast<std::uint32_t>(g)).size();
        if (rep.ok && !residual[g].empty()) {
            rep.ok = false;
            auto [m, beta] = sm.generator[g];
            rep.offending_generator = cell_name(c, m) + "#" + std::to_string(beta);
            const auto& [w, coef] = *residual[g].begin();
            std::string mono;
            for (auto x : w) {
                auto [mm, bb] = sm.generator[x];
                mono += cell_name(c, mm) + "#" + std::to_string(bb) + " ";
            }
            rep.offending_monomial = to_string(coef) + " * " + mono;
        }
    }
    return rep;
}

NilpotencyReport nilpotency_bound(const PointConfig& c, const StructureTables& t)
{
    std::vector<Mask> order = t.generators;
    std::stable_sort(order.begin(), order.end(), [](Mask a, Mask b) { return popcount(a) < popcount(b); });
    std::map<Mask, std::vector<const TableEntry*>> by_output;
    for (const auto& e : t.entries)
        by_output[e.output].push_back(&e);
    std::map<Mask, std::size_t> leaves;
    NilpotencyReport rep;
    for (Mask g : order) {
        std::size_t best = 1;
        auto it = by_output.find(g);
        if (it != by_output.end()) {
            for (auto* e : it->second) {
                std::size_t s = 0;
                for (Mask in : e->inputs)
                    s += leaves.at(in);
                best = std::max(best, s);
            }
            rep.r0 = std::max(rep.r0, best);
        }
        leaves[g] = best;
    }
    rep.below_size = rep.r0 < c.size();
    return rep;
}

ColumnReport marked_column_cohomology(const PointConfig& c, const StructureTables& marked, Mask vertices)
{
    if (marked.variant != Variant::marked || !marked.trivial_coefficients)
        throw std::invalid_argument("column complex needs the marked variant with trivial coefficients");
    std::map<int, std::vector<Mask>> column;
    for (Mask g : marked.generators)
        if (hull_vertices(c, g) == vertices)
            column[marked.degree(g)].push_back(g);
    ColumnReport rep;
    for (const auto& [k, gs] : column)
        for (Mask g : gs)
            rep.complex.basis[k].push_back(cell_name(c, g));
    auto position = [&](int k, Mask g) -> std::optional<std::size_t> {
        auto it = column.find(k);
        if (it == column.end())
            return std::nullopt;
        auto at = std::find(it->second.begin(), it->second.end(), g);
        if (at == it->second.end())
            return std::nullopt;
        return static_cast<std::size_t>(at - it->second.begin());
    };
    for (const auto& [k, gs] : column) {
        MatrixQ dk(rep.complex.dim(k + 1), gs.size());
        for (const auto* e : marked.of_arity(1)) {
            auto src = position(k, e->inputs[0]);
            auto dst = position(k + 1, e->output);
            if (src && dst)
                dk.set(*dst, *src, e->coefficient.get(0, 0));
        }
        if (dk.rows() > 0)
            rep.complex.differential[k] = dk;
    }
    rep.complex.validate();
    rep.cohomology = cohomology(rep.complex, false);
    rep.exact = true;
    for (const auto& [k, b] : rep.cohomology.betti)
        rep.exact = rep.exact && b == 0;
    return rep;
}

} // namespace ir
