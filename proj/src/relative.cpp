#include "infrared/relative.hpp"
#include "infrared/parallel.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ir {

namespace {

using Signature = std::vector<std::pair<bool, std::vector<std::vector<Mask>>>>;

PointConfig realize(const PointConfig& base, const Rational& scale)
{
    std::vector<Point> pts = base.points();
    VecQ far = base.infinity_direction();
    for (auto& x : far)
        x *= scale;
    pts.push_back({kInfinityLabel, far});
    return PointConfig(base.dim(), std::move(pts), std::nullopt, false);
}

bool orientations_match(const PointConfig& base, const PointConfig& concrete)
{
    const int n = static_cast<int>(base.size());
    const int d = static_cast<int>(base.dim());
    for (Mask t = 0; t <= base.all(); ++t) {
        if (popcount(t) != d)
            continue;
        std::vector<int> refs = bits(t);
        refs.push_back(n);
        if (concrete.orient(refs) != base.orient(refs))
            return false;
    }
    return true;
}

Signature signature(const PointConfig& c, Mask inf, unsigned jobs)
{
    std::vector<Mask> markings;
    for (Mask m = 1; m != 0 && m <= c.all(); ++m)
        if ((m & inf) && popcount(m) >= static_cast<int>(c.dim()) + 1)
            markings.push_back(m);
    Signature sig(markings.size());
    parallel_for(markings.size(), jobs, [&](std::size_t k) {
        const Mask m = markings[k];
        sig[k].first = is_geometric(c, m);
        if (!sig[k].first)
            return;
        SecondaryOptions so;
        so.full_lattice = false;
        for (const auto& s : coarse_subdivisions_of(c, m, so))
            sig[k].second.push_back(s.cells);
    });
    return sig;
}

std::string labels_of(const PointConfig& c, const std::vector<Mask>& cells)
{
    std::string s;
    for (Mask m : cells)
        s += cell_name(c, m);
    return s;
}

} // namespace

std::vector<int> InfinityConfig::lower_chain(Mask m) const
{
    if (!infinite(m) || base.dim() != 2)
        throw std::invalid_argument("lower_chain: infinite polygon in the plane expected");
    Hull h = convex_hull(concrete, m);
    auto b = h.boundary;
    auto at = std::find(b.begin(), b.end(), inf_index());
    std::rotate(b.begin(), at, b.end());
    return {b.begin() + 1, b.end()};
}

int InfinityConfig::left(Mask m) const { return position.at(lower_chain(m).front()); }
int InfinityConfig::right(Mask m) const { return position.at(lower_chain(m).back()); }

InfinityConfig attach_infinity(const PointConfig& c, unsigned jobs)
{
    if (!c.has_infinity())
        throw std::invalid_argument("configuration has no infinity direction");
    const std::size_t d = c.dim();
    if (d != 1 && d != 2)
        throw std::invalid_argument("the point at infinity is supported for d = 1 and d = 2");
    InfinityConfig ic;
    ic.base = c;
    const VecQ& u = c.infinity_direction();
    for (std::size_t i = 0; i < c.size(); ++i) {
        const VecQ& x = c.coords(i);
        ic.projected.push_back(d == 1 ? Rational(x[0] * sign(u[0])) : Rational(u[1] * x[0] - u[0] * x[1]));
    }
    ic.slope_order.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        ic.slope_order[i] = static_cast<int>(i);
    std::sort(ic.slope_order.begin(), ic.slope_order.end(),
              [&](int a, int b) { return ic.projected[a] < ic.projected[b]; });
    for (std::size_t k = 1; k < c.size(); ++k) {
        int a = ic.slope_order[k - 1], b = ic.slope_order[k];
        if (ic.projected[a] == ic.projected[b])
            throw std::invalid_argument("points " + c.label(a) + " and " + c.label(b) +
                                        " lie on a line through infinity");
    }
    ic.position.assign(c.size(), 0);
    for (std::size_t k = 0; k < c.size(); ++k)
        ic.position[ic.slope_order[k]] = static_cast<int>(k);

    Rational reach = 1;
    for (const auto& p : c.points())
        for (const auto& x : p.coords)
            reach = std::max(reach, Rational(abs(x) + 1));
    Rational norm = 0;
    for (const auto& x : u)
        norm += abs(x);
    Rational scale = 4 * reach / norm;
    const Mask inf = bit(static_cast<int>(c.size()));
    std::optional<Signature> current;
    for (int attempt = 0; attempt < 40; ++attempt, scale *= 2) {
        PointConfig a = realize(c, scale);
        if (!orientations_match(c, a)) {
            current.reset();
            continue;
        }
        PointConfig b = realize(c, 2 * scale);
        if (!orientations_match(c, b))
            continue;
        if (!current)
            current = signature(a, inf, jobs);
        Signature next = signature(b, inf, jobs);
        if (*current == next) {
            ic.scale = scale;
            ic.concrete = std::move(a);
            return ic;
        }
        current = std::move(next);
    }
    throw std::invalid_argument("no stable realization of the point at infinity was found");
}

SplitReport split_g(const InfinityConfig& ic, const StructureTables& t)
{
    SplitReport r;
    for (Mask g : t.generators)
        (ic.infinite(g) ? r.infinite_generators : r.finite_generators).push_back(g);
    for (const auto& e : t.entries) {
        std::size_t inf_inputs = 0;
        for (Mask m : e.inputs)
            inf_inputs += ic.infinite(m) ? 1 : 0;
        if (inf_inputs == 0) {
            ++r.finite_entries;
            r.subalgebra = r.subalgebra && !ic.infinite(e.output);
        } else {
            ++(inf_inputs == e.arity() ? r.infinite_entries : r.mixed_entries);
            r.ideal = r.ideal && ic.infinite(e.output);
        }
    }
    return r;
}

std::optional<std::size_t> TriangularAlgebra::find(Mask marking) const
{
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (basis[k].marking == marking)
            return k;
    return std::nullopt;
}

bool TriangularAlgebra::strictly_upper_triangular() const
{
    for (const auto& e : basis)
        if (e.left >= e.right)
            return false;
    for (const auto& [ab, cs] : product) {
        const auto &a = basis[ab.first], &b = basis[ab.second], &c = basis[cs.first];
        if (a.right != b.left || c.left != a.left || c.right != b.right)
            return false;
    }
    return true;
}

bool TriangularAlgebra::associative(std::string* witness) const
{
    auto mul = [&](std::size_t a, std::size_t b) -> std::optional<std::pair<std::size_t, int>> {
        auto it = product.find({a, b});
        if (it == product.end())
            return std::nullopt;
        return it->second;
    };
    const std::size_t n = basis.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (basis[a].right != basis[b].left)
                continue;
            for (std::size_t c = 0; c < n; ++c) {
                if (basis[b].right != basis[c].left)
                    continue;
                std::optional<std::pair<std::size_t, int>> lhs, rhs;
                if (auto ab = mul(a, b))
                    if (auto abc = mul(ab->first, c))
                        lhs = std::make_pair(abc->first, ab->second * abc->second);
                if (auto bc = mul(b, c))
                    if (auto abc = mul(a, bc->first))
                        rhs = std::make_pair(abc->first, bc->second * abc->second);
                if (lhs != rhs) {
                    if (witness)
                        *witness = "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
                    return false;
                }
            }
        }
    return true;
}

namespace {

// Product mu(a, b) = (-1)^deg(a) times the coefficient of x_a x_b in D(x_ab).
void fill_products(TriangularAlgebra& r, const std::map<Mask, std::vector<std::pair<std::vector<Mask>, int>>>& words)
{
    for (const auto& [out, terms] : words)
        for (const auto& [w, coef] : terms) {
            if (w.size() != 2) {
                ++r.higher_operations;
                continue;
            }
            std::size_t a = *r.find(w[0]), b = *r.find(w[1]), c = *r.find(out);
            int s = (r.basis[a].degree % 2) ? -coef : coef;
            r.product[{a, b}] = {c, s};
        }
}

void sort_basis(TriangularAlgebra& r)
{
    std::sort(r.basis.begin(), r.basis.end(), [](const auto& x, const auto& y) {
        if (x.left != y.left)
            return x.left < y.left;
        if (x.right != y.right)
            return x.right < y.right;
        return mask_less(x.marking, y.marking);
    });
}

} // namespace

TriangularAlgebra build_R_1d(const PointConfig& c)
{
    if (c.dim() != 1 || c.has_infinity())
        throw std::invalid_argument("build_R_1d: finite one-dimensional configuration expected");
    std::vector<int> order(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return c.coords(a)[0] < c.coords(b)[0]; });
    std::vector<int> rank(c.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        rank[order[k]] = static_cast<int>(k);

    TableOptions o;
    o.variant = Variant::geometric;
    StructureTables t = build_structure_tables(c, o);
    TriangularAlgebra r;
    r.points = c.size();
    DerivationEngine engine;
    std::map<Mask, std::uint32_t> id;
    auto lo = [&](Mask m) { return rank[bits(m).front()] < rank[bits(m).back()] ? rank[bits(m).front()] : rank[bits(m).back()]; };
    auto hi = [&](Mask m) {
        int h = 0;
        for (int i : bits(m))
            h = std::max(h, rank[i]);
        return h;
    };
    auto low = [&](Mask m) {
        int l = static_cast<int>(c.size());
        for (int i : bits(m))
            l = std::min(l, rank[i]);
        return l;
    };
    (void)lo;
    for (Mask g : t.generators) {
        id[g] = engine.add_generator(-t.sigma_dim.at(g), false);
        r.basis.push_back({g, low(g), hi(g), 1 + t.sigma_dim.at(g)});
    }
    sort_basis(r);
    std::map<Mask, std::vector<std::pair<std::vector<Mask>, int>>> words;
    std::map<Mask, Poly> images;
    for (const auto& e : t.entries) {
        std::vector<std::size_t> perm(e.arity());
        for (std::size_t k = 0; k < perm.size(); ++k)
            perm[k] = k;
        std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return low(e.inputs[a]) < low(e.inputs[b]); });
        std::vector<int> deg;
        for (Mask m : e.inputs)
            deg.push_back(t.sigma_dim.at(m));
        const int coef = e.sign * koszul_sign(deg, perm);
        std::vector<Mask> w;
        Word word;
        for (auto k : perm) {
            w.push_back(e.inputs[k]);
            word.push_back(id.at(e.inputs[k]));
        }
        words[e.output].push_back({w, coef});
        engine.add_term(images[e.output], word, coef);
    }
    for (auto& [g, img] : images)
        engine.set_image(id.at(g), std::move(img));
    for (std::uint32_t g = 0; g < engine.size(); ++g)
        if (!engine.apply(engine.image(g)).empty())
            r.differential_squares_to_zero = false;
    fill_products(r, words);
    return r;
}

MixedDifferential mixed_differential(const InfinityConfig& ic, unsigned jobs)
{
    if (ic.base.dim() != 2)
        throw std::invalid_argument("mixed_differential: d = 2 only");
    MixedDifferential md;
    TableOptions o;
    o.variant = Variant::geometric;
    o.jobs = jobs;
    md.tables = build_structure_tables(ic.concrete, o);
    const auto& t = md.tables;
    std::map<Mask, int> left;
    for (Mask g : t.generators) {
        md.id[g] = md.engine.add_generator(-t.sigma_dim.at(g), !ic.infinite(g));
        if (ic.infinite(g))
            left[g] = ic.left(g);
    }
    std::map<Mask, Poly> images;
    for (const auto& e : t.entries) {
        std::vector<std::size_t> perm;
        for (std::size_t k = 0; k < e.arity(); ++k)
            if (!ic.infinite(e.inputs[k]))
                perm.push_back(k);
        const std::size_t nf = perm.size();
        for (std::size_t k = 0; k < e.arity(); ++k)
            if (ic.infinite(e.inputs[k]))
                perm.push_back(k);
        std::sort(perm.begin() + static_cast<long>(nf), perm.end(),
                  [&](auto a, auto b) { return left.at(e.inputs[a]) < left.at(e.inputs[b]); });
        std::vector<int> deg;
        for (Mask m : e.inputs)
            deg.push_back(t.sigma_dim.at(m));
        MixedTerm term;
        term.coefficient = e.sign * koszul_sign(deg, perm);
        Word word;
        for (std::size_t k = 0; k < perm.size(); ++k) {
            Mask m = e.inputs[perm[k]];
            (k < nf ? term.finite : term.infinite).push_back(m);
            word.push_back(md.id.at(m));
        }
        md.engine.add_term(images[e.output], word, term.coefficient);
        md.image[e.output].push_back(std::move(term));
    }
    for (auto& [g, img] : images)
        md.engine.set_image(md.id.at(g), std::move(img));
    return md;
}

DSquaredReport verify_mixed_d_squared(const InfinityConfig& ic, const MixedDifferential& md, unsigned jobs)
{
    const auto& gens = md.tables.generators;
    std::vector<Poly> residual(gens.size());
    parallel_for(gens.size(), jobs, [&](std::size_t k) {
        residual[k] = md.engine.apply(md.engine.image(md.id.at(gens[k])));
    });
    DSquaredReport rep;
    rep.generators = gens.size();
    for (std::size_t k = 0; k < gens.size(); ++k) {
        rep.image_terms += md.engine.image(md.id.at(gens[k])).size();
        if (rep.ok && !residual[k].empty()) {
            rep.ok = false;
            rep.offending_generator = cell_name(ic.concrete, gens[k]);
            const auto& [w, coef] = *residual[k].begin();
            rep.offending_monomial = to_string(coef) + " *";
            for (auto x : w)
                rep.offending_monomial += " " + cell_name(ic.concrete, gens[x]);
        }
    }
    return rep;
}

TriangularAlgebra build_R_infty(const InfinityConfig& ic, const MixedDifferential& md)
{
    TriangularAlgebra r;
    r.points = ic.base.size();
    for (Mask g : md.tables.generators)
        if (ic.infinite(g))
            r.basis.push_back({g, ic.left(g), ic.right(g), 1 + md.tables.sigma_dim.at(g)});
    sort_basis(r);
    std::map<Mask, std::vector<std::pair<std::vector<Mask>, int>>> words;
    for (const auto& [out, terms] : md.image)
        for (const auto& term : terms)
            if (term.finite.empty())
                words[out].push_back({term.infinite, term.coefficient});
    fill_products(r, words);
    return r;
}

std::vector<Subdivision> one_finite_subdivisions(const InfinityConfig& ic, Mask p)
{
    const PointConfig& c = ic.concrete;
    const int inf = ic.inf_index();
    const auto chain = ic.lower_chain(p);
    auto on_chain = [&](int a, int b) {
        for (std::size_t k = 0; k + 1 < chain.size(); ++k)
            if ((chain[k] == a && chain[k + 1] == b) || (chain[k] == b && chain[k + 1] == a))
                return true;
        return false;
    };
    const Mask finite = p & ~ic.inf();
    std::vector<Subdivision> out;
    for (Mask q = finite; q; q = (q - 1) & finite) {
        if (popcount(q) < 3 || !is_geometric(c, q))
            continue;
        Hull h = convex_hull(c, q);
        const auto& b = h.boundary;
        std::vector<int> upper;
        bool ok = true;
        for (std::size_t k = 0; k < b.size() && ok; ++k) {
            int u = b[k], v = b[(k + 1) % b.size()];
            if (c.orient({u, v, inf}) > 0)
                ok = on_chain(u, v);
            else
                upper.push_back(u), upper.push_back(v);
        }
        if (!ok)
            continue;
        std::sort(upper.begin(), upper.end(), [&](int x, int y) { return ic.position[x] < ic.position[y]; });
        upper.erase(std::unique(upper.begin(), upper.end()), upper.end());
        const std::size_t m = upper.size() - 1;
        std::vector<Mask> cells(m, ic.inf());
        for (std::size_t k = 0; k < m; ++k)
            cells[k] |= bit(upper[k]) | bit(upper[k + 1]);
        for (int x : bits(finite & ~q)) {
            const int px = ic.position[x];
            std::size_t k = 0;
            while (k + 1 < m && ic.position[upper[k + 1]] < px)
                ++k;
            cells[k] |= bit(x);
        }
        Subdivision s{p, cells, std::nullopt};
        s.cells.push_back(q);
        s.canonicalize();
        if (!std::all_of(s.cells.begin(), s.cells.end(), [&](Mask cell) { return is_geometric(c, cell); }))
            continue;
        try {
            validate_subdivision(c, s);
        } catch (const std::invalid_argument&) {
            continue;
        }
        auto reg = is_regular(c, s);
        if (!reg.regular || !is_coarse(c, s))
            continue;
        s.certificate = reg.certificate;
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), subdivision_less);
    return out;
}

bool PsiReport::higher_empty() const
{
    for (const auto& [n, k] : components)
        if (n >= 2 && k > 0)
            return false;
    return true;
}

PsiReport extract_psi(const MixedDifferential& md)
{
    PsiReport r;
    for (const auto& [out, terms] : md.image)
        for (const auto& term : terms) {
            if (term.finite.empty() || term.infinite.empty())
                continue;
            ++r.components[term.finite.size()];
            if (term.finite.size() == 1)
                r.linear.push_back({term.finite[0], out, term.infinite, term.coefficient});
        }
    return r;
}

bool HochschildElement::operator<(const HochschildElement& o) const
{
    if (target != o.target)
        return mask_less(target, o.target);
    return cells_less(word, o.word);
}

namespace {

int handle_length(const InfinityConfig& ic, const HochschildElement& x)
{
    std::vector<int> w;
    for (Mask m : x.word) {
        auto ch = ic.lower_chain(m);
        w.insert(w.end(), ch.begin() + (w.empty() ? 0 : 1), ch.end());
    }
    const auto l = ic.lower_chain(x.target);
    const std::size_t n = std::min(w.size(), l.size());
    std::size_t pre = 0, suf = 0;
    while (pre + 1 < n && w[pre + 1] == l[pre + 1])
        ++pre;
    while (suf + 1 < n && w[w.size() - 2 - suf] == l[l.size() - 2 - suf])
        ++suf;
    return static_cast<int>(std::min(pre + suf, n - 1));
}

std::string describe(const PointConfig& c, const HochschildElement& x)
{
    std::string s = cell_name(c, x.target) + " <-";
    for (Mask m : x.word)
        s += " " + cell_name(c, m);
    return s;
}

} // namespace

DirectedHochschild directed_hochschild(const InfinityConfig& ic, const MixedDifferential& md, const TriangularAlgebra& r)
{
    const auto& sd = md.tables.sigma_dim;
    DirectedHochschild h;
    std::vector<std::pair<HochschildElement, int>> all;
    std::vector<std::size_t> word;
    auto emit = [&]() {
        const auto& first = r.basis[word.front()];
        const auto& last = r.basis[word.back()];
        int inner = 0;
        HochschildElement x;
        for (auto k : word) {
            x.word.push_back(r.basis[k].marking);
            inner += sd.at(r.basis[k].marking);
        }
        for (const auto& e : r.basis)
            if (e.left == first.left && e.right == last.right) {
                x.target = e.marking;
                all.push_back({x, sd.at(e.marking) - inner});
            }
    };
    auto extend = [&](auto&& self) -> void {
        emit();
        const int at = r.basis[word.back()].right;
        for (std::size_t k = 0; k < r.basis.size(); ++k)
            if (r.basis[k].left == at) {
                word.push_back(k);
                self(self);
                word.pop_back();
            }
    };
    for (std::size_t k = 0; k < r.basis.size(); ++k) {
        word = {k};
        extend(extend);
    }
    std::sort(all.begin(), all.end());
    for (const auto& [x, deg] : all) {
        h.index[x] = {deg, h.basis[deg].size()};
        h.basis[deg].push_back(x);
        h.complex.basis[deg].push_back(describe(ic.concrete, x));
        h.handle_length[x] = handle_length(ic, x);
    }

    // all-infinite quadratic part of D, and where each generator occurs in it
    std::map<Mask, std::vector<std::pair<std::vector<Mask>, int>>> coproduct;
    std::map<Mask, std::vector<std::tuple<Mask, std::vector<Mask>, int>>> occurs;
    for (const auto& [out, terms] : md.image)
        for (const auto& t : terms)
            if (t.finite.empty()) {
                coproduct[out].push_back({t.infinite, t.coefficient});
                for (Mask m : t.infinite)
                    occurs[m].push_back({out, t.infinite, t.coefficient});
            }
    auto odd = [&](Mask m) { return sd.at(m) % 2 != 0; };

    for (const auto& [deg, elems] : h.basis) {
        MatrixQ dk(h.basis.count(deg + 1) ? h.basis[deg + 1].size() : 0, elems.size());
        const bool x_odd = deg % 2 != 0;
        for (std::size_t col = 0; col < elems.size(); ++col) {
            const auto& x = elems[col];
            std::map<HochschildElement, Rational> out;
            // D_inf after X: Leibniz on the word
            bool parity = false;
            for (std::size_t k = 0; k < x.word.size(); ++k) {
                auto it = coproduct.find(x.word[k]);
                if (it != coproduct.end())
                    for (const auto& [w, coef] : it->second) {
                        HochschildElement y{x.target, {}};
                        y.word.insert(y.word.end(), x.word.begin(), x.word.begin() + static_cast<long>(k));
                        y.word.insert(y.word.end(), w.begin(), w.end());
                        y.word.insert(y.word.end(), x.word.begin() + static_cast<long>(k) + 1, x.word.end());
                        out[y] += parity ? -coef : coef;
                    }
                parity ^= odd(x.word[k]);
            }
            // X after D_inf, with the commutator sign
            auto it = occurs.find(x.target);
            if (it != occurs.end())
                for (const auto& [big, w, coef] : it->second) {
                    // w has two letters; X replaces the occurrence of x.target
                    for (std::size_t k = 0; k < w.size(); ++k) {
                        if (w[k] != x.target)
                            continue;
                        HochschildElement y{big, {}};
                        bool before = false;
                        for (std::size_t j = 0; j < w.size(); ++j) {
                            if (j == k)
                                y.word.insert(y.word.end(), x.word.begin(), x.word.end());
                            else
                                y.word.push_back(w[j]);
                            if (j < k)
                                before ^= odd(w[j]);
                        }
                        int s = (x_odd && before) ? -coef : coef;
                        if (x_odd)
                            s = -s;
                        out[y] -= s;
                    }
                }
            for (const auto& [y, v] : out) {
                if (!sgn(v))
                    continue;
                auto at = h.index.find(y);
                if (at == h.index.end() || at->second.first != deg + 1)
                    throw std::logic_error("Hochschild differential leaves the directed complex at " +
                                           describe(ic.concrete, y));
                dk.add(at->second.second, col, v);
            }
        }
        if (dk.rows() > 0)
            h.complex.differential[deg] = dk;
    }
    h.complex.validate();
    return h;
}

namespace {

// The closed path through the negative boundaries bounds a convex finite polygon Q' whose
// marking, together with the word, makes up the target.
bool convex_closed_path(const InfinityConfig& ic, const HochschildElement& x)
{
    const PointConfig& c = ic.concrete;
    std::vector<int> w;
    Mask cover = 0;
    for (Mask m : x.word) {
        auto ch = ic.lower_chain(m);
        w.insert(w.end(), ch.begin() + (w.empty() ? 0 : 1), ch.end());
        cover |= m;
    }
    const auto l = ic.lower_chain(x.target);
    std::vector<int> cycle = w;
    for (std::size_t k = l.size() - 1; k-- > 1;)
        cycle.push_back(l[k]);
    Mask vs = 0;
    for (int v : cycle)
        vs |= bit(v);
    if (cycle.size() < 3 || static_cast<std::size_t>(popcount(vs)) != cycle.size())
        return false;
    Hull h = convex_hull(c, vs);
    if (h.vertices != vs)
        return false;
    auto b = h.boundary;
    std::reverse(b.begin(), b.end()); // the path runs clockwise: negative boundaries left to right, then back
    auto at = std::find(b.begin(), b.end(), cycle[0]);
    std::rotate(b.begin(), at, b.end());
    if (b != cycle)
        return false;
    Mask q = vs;
    for (std::size_t i = 0; i < ic.base.size(); ++i)
        if (in_hull(c, vs, static_cast<int>(i)))
            q |= bit(static_cast<int>(i));
    return is_geometric(c, q) && (q | cover) == x.target;
}

} // namespace

UniversalityReport verify_universality(const PointConfig& c, unsigned jobs)
{
    UniversalityReport rep;
    if (c.dim() != 2 || c.size() < 3)
        throw std::invalid_argument("universality needs d = 2 and at least three finite points");
    InfinityConfig ic = attach_infinity(c, jobs);
    MixedDifferential md = mixed_differential(ic, jobs);
    rep.d_squared = verify_mixed_d_squared(ic, md, jobs).ok;
    TriangularAlgebra r = build_R_infty(ic, md);
    PsiReport psi = extract_psi(md);
    rep.psi_components = psi.components;

    rep.one_finite_matches = true;
    for (Mask g : md.tables.generators) {
        if (!ic.infinite(g))
            continue;
        std::set<std::vector<Mask>> from_d, built;
        for (const auto& t : md.image[g])
            if (t.finite.size() == 1) {
                std::vector<Mask> cells = t.finite;
                cells.insert(cells.end(), t.infinite.begin(), t.infinite.end());
                std::sort(cells.begin(), cells.end(), mask_less);
                from_d.insert(cells);
            }
        for (const auto& s : one_finite_subdivisions(ic, g))
            built.insert(s.cells);
        if (from_d != built) {
            rep.one_finite_matches = false;
            rep.failure += "one-finite mismatch on " + cell_name(ic.concrete, g) + "; ";
        }
    }

    DirectedHochschild h = directed_hochschild(ic, md, r);
    ChainComplexQ source;
    for (Mask g : md.tables.generators)
        if (!ic.infinite(g))
            source.basis[md.tables.degree(g)].push_back(cell_name(ic.concrete, g));
    for (const auto& [k, b] : source.basis)
        rep.g_dims[k] = b.size();

    std::map<int, MatrixQ> f;
    std::set<int> degrees;
    for (const auto& [k, b] : source.basis)
        degrees.insert(k);
    for (const auto& [k, b] : h.basis)
        degrees.insert(k);
    for (int k : degrees)
        f[k] = MatrixQ(h.complex.dim(k), source.dim(k));
    rep.directed = true;
    rep.degree_preserving = true;
    std::set<HochschildElement> image0;
    for (const auto& e : psi.linear) {
        HochschildElement x{e.target, e.word};
        auto at = h.index.find(x);
        if (at == h.index.end()) {
            rep.directed = false;
            rep.failure += "Psi outside the directed complex: " + describe(ic.concrete, x) + "; ";
            continue;
        }
        const int k = md.tables.degree(e.finite);
        if (at->second.first != k) {
            rep.degree_preserving = false;
            continue;
        }
        const auto& names = source.basis[k];
        auto col = std::find(names.begin(), names.end(), cell_name(ic.concrete, e.finite)) - names.begin();
        f[k].add(at->second.second, static_cast<std::size_t>(col), e.coefficient);
        if (h.handle_length.at(x) == 0)
            image0.insert(x);
    }
    rep.chain_map = true;
    for (int k : degrees)
        if (!(h.complex.d(k) * f[k]).is_zero())
            rep.chain_map = false;

    auto q = is_quasi_iso(f, source, h.complex);
    rep.hochschild_betti = q.betti_target;
    rep.quasi_iso = q.quasi_iso && rep.chain_map && rep.directed && rep.degree_preserving;
    rep.iso_in_degree = q.iso_in_degree;
    rep.iso_away_from_zero = rep.chain_map && rep.directed && rep.degree_preserving;
    for (const auto& [k, iso] : q.iso_in_degree)
        if (k != 0 && !iso)
            rep.iso_away_from_zero = false;

    // Edge rescalings: X_phi sends x_P to (sum of phi over the negative boundary of P) x_P.
    {
        std::map<std::pair<int, int>, std::size_t> edges;
        std::vector<std::vector<std::pair<std::pair<int, int>, int>>> uses;
        for (const auto& e : r.basis) {
            auto ch = ic.lower_chain(e.marking);
            for (std::size_t k = 0; k + 1 < ch.size(); ++k)
                edges.emplace(std::make_pair(ch[k], ch[k + 1]), edges.size());
        }
        const std::size_t n0 = h.complex.dim(0);
        std::vector<VecQ> cols;
        const MatrixQ in = h.complex.d(-1);
        const MatrixQ in_t = in.transpose();
        for (std::size_t k = 0; k < in_t.rows(); ++k) {
            VecQ v(n0, Rational(0));
            for (const auto& en : in_t.row(k))
                v[en.col] = en.value;
            cols.push_back(v);
        }
        const std::size_t boundary_rank = rank_of_rows(cols);
        std::vector<VecQ> gauges(edges.size(), VecQ(n0, Rational(0)));
        for (const auto& e : r.basis) {
            auto at = h.index.find(HochschildElement{e.marking, {e.marking}});
            auto ch = ic.lower_chain(e.marking);
            for (std::size_t k = 0; k + 1 < ch.size(); ++k)
                gauges[edges.at({ch[k], ch[k + 1]})][at->second.second] += 1;
        }
        const MatrixQ out = h.complex.d(0);
        bool cocycles = true;
        for (const auto& g : gauges)
            for (const auto& x : out.apply(g))
                if (sgn(x))
                    cocycles = false;
        cols.insert(cols.end(), gauges.begin(), gauges.end());
        rep.edge_rescalings = rank_of_rows(cols) - boundary_rank;
        auto b0 = q.betti_target.find(0);
        rep.degree0_is_rescalings =
            cocycles && rep.edge_rescalings == (b0 == q.betti_target.end() ? 0 : b0->second);
    }

    rep.filtration = true;
    for (const auto& [k, dk] : h.complex.differential)
        for (std::size_t row = 0; row < dk.rows(); ++row)
            for (const auto& e : dk.row(row))
                if (h.handle_length.at(h.basis[k + 1][row]) < h.handle_length.at(h.basis[k][e.col]))
                    rep.filtration = false;

    std::set<HochschildElement> convex0;
    for (const auto& [x, len] : h.handle_length)
        if (len == 0 && convex_closed_path(ic, x))
            convex0.insert(x);
    rep.gr0_image = image0 == convex0;
    if (!rep.gr0_image)
        rep.failure += "gr0 image differs from the convex closed paths; ";
    return rep;
}

} // namespace ir
