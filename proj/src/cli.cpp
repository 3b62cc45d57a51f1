#include "infrared/cli.hpp"
#include "infrared/io.hpp"
#include "infrared/mc.hpp"
#include "infrared/relative.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace ir {

namespace {

struct Context {
    const JobSpec& spec;
    PointConfig config;
    std::optional<CoefficientSystem> coefficients;
    std::string input_hash;
};

struct Output {
    Json result;
    std::string dot; // filled by commands with a graph export
};

std::string dot_escape(const std::string& s)
{
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\')
            out += '\\';
        out += ch;
    }
    return out;
}

std::string cell_list(const PointConfig& c, const std::vector<Mask>& cells)
{
    std::string s;
    for (std::size_t k = 0; k < cells.size(); ++k)
        s += (k ? " " : "") + cell_name(c, cells[k]);
    return s;
}

PointConfig with_default_infinity(const PointConfig& c)
{
    if (c.has_infinity())
        return c;
    VecQ u(c.dim(), Rational(0));
    u.back() = 1;
    return PointConfig(c.dim(), c.points(), u);
}

void require_trivial(const Context& cx)
{
    if (cx.coefficients && !cx.coefficients->trivial())
        throw std::invalid_argument(cx.spec.command + " supports trivial coefficients only");
}

void require_plane(const Context& cx)
{
    if (cx.config.dim() != 2)
        throw std::invalid_argument(cx.spec.command + " needs a planar configuration");
}

Json degree_map(const std::map<int, std::size_t>& m)
{
    Json out = Json::object();
    for (const auto& [k, v] : m)
        out[std::to_string(k)] = v;
    return out;
}

Output cmd_check(const Context& cx)
{
    const PointConfig& c = cx.config;
    Output o;
    auto gp = check_general_position(c);
    o.result["points"] = c.size();
    o.result["dimension"] = c.dim();
    o.result["general_position"] = gp.pass;
    Json v = Json::array();
    for (const auto& w : gp.violations)
        v.push_back(w);
    o.result["violations"] = v;
    if (gp.pass && c.has_infinity() && (c.dim() == 1 || c.dim() == 2)) {
        try {
            auto ic = attach_infinity(c, cx.spec.jobs);
            Json order = Json::array();
            for (int i : ic.slope_order)
                order.push_back(c.label(static_cast<std::size_t>(i)));
            o.result["slope_order"] = order;
            o.result["realization_scale"] = to_string(ic.scale);
        } catch (const std::invalid_argument& e) {
            o.result["general_position"] = false;
            o.result["infinity_error"] = e.what();
        }
    }
    return o;
}

Output cmd_triangulations(const Context& cx)
{
    const PointConfig& c = cx.config;
    EnumerationOptions eo;
    eo.seed = cx.spec.seed;
    eo.jobs = cx.spec.jobs;
    auto ts = enumerate_regular_triangulations(c, c.all(), eo);
    Output o;
    o.result["count"] = ts.size();
    Json list = Json::array();
    for (const auto& t : ts) {
        Json e = subdivision_json(c, t);
        e["gkz"] = rationals_json(gkz_vector(c, t));
        list.push_back(e);
    }
    o.result["triangulations"] = list;

    std::set<std::pair<std::size_t, std::size_t>> flips;
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (const auto& z : enumerate_circuits(c)) {
            auto f = flip(ts[i], z);
            if (!f)
                continue;
            f->canonicalize();
            for (std::size_t j = 0; j < ts.size(); ++j)
                if (j != i && ts[j].cells == f->cells)
                    flips.insert({std::min(i, j), std::max(i, j)});
        }
    Json edges = Json::array();
    for (const auto& [i, j] : flips)
        edges.push_back({i, j});
    o.result["flip_edges"] = edges;

    if (cx.spec.oracle) {
        std::set<std::vector<std::string>> gkz;
        for (const auto& t : ts) {
            validate_subdivision(c, t);
            if (!t.is_triangulation(c) || !is_regular(c, t).regular)
                throw InvariantFailure("enumerated triangulation is not a regular triangulation: " +
                                       cell_list(c, t.cells));
            std::vector<std::string> key;
            for (const auto& q : gkz_vector(c, t))
                key.push_back(to_string(q));
            if (!gkz.insert(key).second)
                throw InvariantFailure("two triangulations share a GKZ vector");
        }
        o.result["oracle"] = "regularity certificates and distinct GKZ vectors checked";
    }

    std::ostringstream dot;
    dot << "graph flips {\n";
    for (std::size_t i = 0; i < ts.size(); ++i)
        dot << "  t" << i << " [label=\"" << dot_escape(cell_list(c, ts[i].cells)) << "\"];\n";
    for (const auto& [i, j] : flips)
        dot << "  t" << i << " -- t" << j << ";\n";
    dot << "}\n";
    o.dot = dot.str();
    return o;
}

Output cmd_secondary(const Context& cx)
{
    const PointConfig& c = cx.config;
    SecondaryOptions so;
    so.seed = cx.spec.seed;
    so.jobs = cx.spec.jobs;
    auto sp = build_secondary(c, c.all(), so);
    Output o;
    o.result["dim"] = sp.dim;
    Json verts = Json::array();
    for (std::size_t k = 0; k < sp.triangulations.size(); ++k)
        verts.push_back({{"cells", cells_json(c, sp.triangulations[k].cells)}, {"gkz", rationals_json(sp.gkz[k])}});
    o.result["vertices"] = verts;
    Json facets = Json::array();
    for (const auto& f : sp.facets)
        facets.push_back({{"normal", rationals_json(f.normal)}, {"offset", to_string(f.offset)}});
    o.result["facets"] = facets;
    Json fvec = Json::array();
    for (int k = 0; k <= sp.dim; ++k)
        fvec.push_back(sp.faces_of_dim(k).size());
    o.result["f_vector"] = fvec;
    Json faces = Json::array();
    for (const auto& f : sp.faces) {
        Json children = Json::array();
        for (auto ch : f.children)
            children.push_back(ch);
        faces.push_back({{"dim", f.dim},
                         {"cells", cells_json(c, f.subdivision.cells)},
                         {"geometric", f.geometric},
                         {"children", children}});
    }
    o.result["faces"] = faces;

    if (cx.spec.oracle) {
        if (sp.dim != static_cast<int>(c.size()) - static_cast<int>(c.dim()) - 1)
            throw InvariantFailure("secondary polytope has dimension " + std::to_string(sp.dim));
        SecondaryCache cache(c, so);
        for (std::size_t f = 0; f < sp.faces.size(); ++f) {
            auto rep = verify_factorization(c, sp, f, cache);
            if (!rep.ok)
                throw InvariantFailure("factorization fails at " + cell_list(c, sp.faces[f].subdivision.cells) +
                                       ": " + rep.message);
        }
        o.result["oracle"] = "dimension law and factorization on every face checked";
    }

    std::ostringstream dot;
    dot << "digraph face_lattice {\n  rankdir=BT;\n";
    for (std::size_t k = 0; k < sp.faces.size(); ++k)
        dot << "  f" << k << " [label=\"" << dot_escape(cell_list(c, sp.faces[k].subdivision.cells))
            << "\", dim=" << sp.faces[k].dim << "];\n";
    for (std::size_t k = 0; k < sp.faces.size(); ++k)
        for (auto ch : sp.faces[k].children)
            dot << "  f" << ch << " -> f" << k << ";\n";
    dot << "}\n";
    o.dot = dot.str();
    return o;
}

Json coefficient_json(const MatrixQ& m, bool trivial)
{
    if (trivial)
        return to_string(m.get(0, 0));
    Json rows = Json::array();
    for (const auto& r : m.to_dense())
        rows.push_back(rationals_json(r));
    return rows;
}

Output cmd_linfty(const Context& cx)
{
    PointConfig c = cx.config;
    if (c.has_infinity())
        c = attach_infinity(c, cx.spec.jobs).concrete;
    TableOptions to;
    to.variant = cx.spec.geometric_only ? Variant::geometric : Variant::marked;
    to.flip_orientation = cx.spec.flip_orientation;
    to.jobs = cx.spec.jobs;
    to.seed = cx.spec.seed;
    if (cx.coefficients && !cx.coefficients->trivial())
        to.coefficients = &*cx.coefficients;
    auto t = build_structure_tables(c, to);
    auto d2 = verify_d_squared(c, t, cx.spec.jobs);
    if (!d2.ok)
        throw InvariantFailure("d^2 != 0 on " + d2.offending_generator + ": " + d2.offending_monomial);

    Output o;
    o.result["variant"] = t.variant == Variant::marked ? "marked" : "geometric";
    o.result["flipped"] = t.flipped;
    Json gens = Json::array();
    for (Mask g : t.generators)
        gens.push_back({{"marking", labels_json(c, g)}, {"degree", t.degree(g)}, {"sigma_dim", t.sigma_dim.at(g)}});
    o.result["generators"] = gens;
    Json entries = Json::array();
    for (const auto& e : t.entries)
        entries.push_back({{"inputs", cells_json(c, e.inputs)},
                           {"output", labels_json(c, e.output)},
                           {"coefficient", coefficient_json(e.coefficient, t.trivial_coefficients)}});
    o.result["entries"] = entries;
    o.result["d_squared"] = {{"ok", d2.ok}, {"generators", d2.generators}, {"image_terms", d2.image_terms}};
    auto nil = nilpotency_bound(c, t);
    o.result["nilpotency"] = {{"r0", nil.r0}, {"below_size", nil.below_size}};

    if (cx.spec.oracle) {
        // the geometric tables are the marked ones restricted to geometric generators
        TableOptions other = to;
        other.variant = t.variant == Variant::marked ? Variant::geometric : Variant::marked;
        auto u = build_structure_tables(c, other);
        const auto& small = t.variant == Variant::geometric ? t : u;
        const auto& big = t.variant == Variant::geometric ? u : t;
        std::set<std::pair<std::vector<Mask>, Mask>> support;
        for (const auto& e : big.entries)
            support.insert({e.inputs, e.output});
        for (const auto& e : small.entries)
            if (!support.count({e.inputs, e.output}))
                throw InvariantFailure("geometric entry missing from the marked tables");
        o.result["oracle"] = "geometric tables embed in the marked tables";
    }
    return o;
}

Output cmd_mc(const Context& cx)
{
    require_trivial(cx);
    const PointConfig& c = cx.config;
    if (c.has_infinity())
        throw std::invalid_argument("mc works on finite configurations");
    const Variant v = cx.spec.geometric_only ? Variant::geometric : Variant::marked;
    TableOptions to;
    to.variant = v;
    to.jobs = cx.spec.jobs;
    auto t = build_structure_tables(c, to);
    auto lat = cocycle_lattice(c);
    Output o;
    o.result["variant"] = v == Variant::marked ? "marked" : "geometric";
    o.result["simplices"] = cells_json(c, lat.simplices);
    Json eqs = Json::array();
    for (const auto& eq : circuit_equations(c)) {
        auto exps = [&](const std::vector<Mask>& side) {
            Json e = Json::array();
            for (Mask s : lat.simplices)
                e.push_back(std::count(side.begin(), side.end(), s));
            return e;
        };
        eqs.push_back({{"circuit", labels_json(c, eq.support)},
                       {"geometric", is_geometric(c, eq.support)},
                       {"plus", exps(eq.plus)},
                       {"minus", exps(eq.minus)}});
    }
    o.result["equations"] = eqs;
    o.result["lattice"] = {{"rank", lat.rank()}, {"relations_rank", lat.matrix_rank}};
    if (c.dim() == 2)
        o.result["area_is_cocycle"] = is_additive_cocycle(c, area_cocycle(c));

    const std::size_t samples = cx.spec.oracle ? 100 : 20;
    std::size_t mc = 0;
    for (std::size_t k = 0; k < samples; ++k) {
        auto g = random_mc_element(c, lat, cx.spec.seed * 1000 + k, k % 2 == 1);
        auto r = is_mc(c, t, g);
        if (!r.agree())
            throw InvariantFailure("direct and binomial MC verdicts disagree on sample " + std::to_string(k));
        mc += r.direct ? 1 : 0;
    }
    o.result["samples"] = {{"count", samples}, {"mc", mc}, {"verdicts_agree", true}};
    return o;
}

Json slope_order_json(const InfinityConfig& ic)
{
    Json order = Json::array();
    for (int i : ic.slope_order)
        order.push_back(ic.base.label(static_cast<std::size_t>(i)));
    return order;
}

Json algebra_json(const PointConfig& c, const TriangularAlgebra& r, const std::vector<std::string>& names)
{
    Json out;
    Json basis = Json::array();
    for (const auto& e : r.basis)
        basis.push_back({{"marking", labels_json(c, e.marking)},
                         {"left", names.at(static_cast<std::size_t>(e.left))},
                         {"right", names.at(static_cast<std::size_t>(e.right))},
                         {"degree", e.degree}});
    out["basis"] = basis;
    Json products = Json::array();
    for (const auto& [ab, cs] : r.product)
        products.push_back({{"a", ab.first}, {"b", ab.second}, {"product", cs.first}, {"sign", cs.second}});
    out["products"] = products;
    std::string witness;
    const bool assoc = r.associative(&witness);
    out["associative"] = assoc;
    out["strictly_upper_triangular"] = r.strictly_upper_triangular();
    out["higher_operations"] = r.higher_operations;
    out["differential_squares_to_zero"] = r.differential_squares_to_zero;
    if (!assoc)
        throw InvariantFailure("product is not associative at basis triple " + witness);
    if (!r.differential_squares_to_zero)
        throw InvariantFailure("tensor algebra differential does not square to zero");
    return out;
}

Output cmd_relative_r(const Context& cx)
{
    require_trivial(cx);
    const PointConfig& c = cx.config;
    Output o;
    if (c.dim() == 1) {
        const int s = c.has_infinity() ? sign(c.infinity_direction()[0]) : 1;
        std::vector<Point> pts = c.points();
        for (auto& p : pts)
            p.coords[0] *= s;
        PointConfig line(1, pts);
        auto r = build_R_1d(line);
        std::vector<int> order(line.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return line.coords(a)[0] < line.coords(b)[0]; });
        std::vector<std::string> names;
        for (int i : order)
            names.push_back(line.label(static_cast<std::size_t>(i)));
        o.result["order"] = names;
        o.result["algebra"] = algebra_json(line, r, names);
        return o;
    }
    require_plane(cx);
    auto ic = attach_infinity(c, cx.spec.jobs);
    auto md = mixed_differential(ic, cx.spec.jobs);
    auto d2 = verify_mixed_d_squared(ic, md, cx.spec.jobs);
    if (!d2.ok)
        throw InvariantFailure("D^2 != 0 on " + d2.offending_generator + ": " + d2.offending_monomial);
    auto r = build_R_infty(ic, md);
    std::vector<std::string> names;
    for (int i : ic.slope_order)
        names.push_back(c.label(static_cast<std::size_t>(i)));
    o.result["slope_order"] = names;
    o.result["algebra"] = algebra_json(ic.concrete, r, names);
    if (r.higher_operations != 0)
        throw InvariantFailure("R_inf carries operations of arity at least three");
    return o;
}

Output cmd_relative_psi(const Context& cx)
{
    require_trivial(cx);
    require_plane(cx);
    auto ic = attach_infinity(cx.config, cx.spec.jobs);
    auto md = mixed_differential(ic, cx.spec.jobs);
    auto d2 = verify_mixed_d_squared(ic, md, cx.spec.jobs);
    if (!d2.ok)
        throw InvariantFailure("D^2 != 0 on " + d2.offending_generator + ": " + d2.offending_monomial);
    auto psi = extract_psi(md);
    const PointConfig& c = ic.concrete;
    Output o;
    o.result["slope_order"] = slope_order_json(ic);
    Json lin = Json::array();
    for (const auto& e : psi.linear)
        lin.push_back({{"finite", labels_json(c, e.finite)},
                       {"target", labels_json(c, e.target)},
                       {"word", cells_json(c, e.word)},
                       {"coefficient", e.coefficient}});
    o.result["psi_linear"] = lin;
    Json comps = Json::object(), higher = Json::object();
    for (const auto& [n, k] : psi.components) {
        comps[std::to_string(n)] = k;
        if (n >= 2)
            higher[std::to_string(n)] = k;
    }
    o.result["psi_components"] = comps;
    o.result["psi_higher_components"] = higher;
    Json terms = Json::array();
    for (const auto& [out, list] : md.image)
        for (const auto& t : list)
            if (!t.finite.empty() && t.finite.size() >= 2)
                terms.push_back({{"target", labels_json(c, out)},
                                 {"finite", cells_json(c, t.finite)},
                                 {"infinite", cells_json(c, t.infinite)}});
    o.result["higher_terms"] = terms;

    if (cx.spec.oracle) {
        for (Mask g : md.tables.generators) {
            if (!ic.infinite(g))
                continue;
            std::set<std::vector<Mask>> built, from_d;
            for (const auto& s : one_finite_subdivisions(ic, g))
                built.insert(s.cells);
            for (const auto& t : md.image[g])
                if (t.finite.size() == 1) {
                    auto cells = t.finite;
                    cells.insert(cells.end(), t.infinite.begin(), t.infinite.end());
                    std::sort(cells.begin(), cells.end(), mask_less);
                    from_d.insert(cells);
                }
            if (built != from_d)
                throw InvariantFailure("one-finite subdivisions of " + cell_name(c, g) +
                                       " differ from the coarse enumeration");
        }
        o.result["oracle"] = "one-finite subdivisions rebuilt from their finite cell";
    }
    return o;
}

Output cmd_universality(const Context& cx)
{
    require_trivial(cx);
    require_plane(cx);
    auto r = verify_universality(cx.config, cx.spec.jobs);
    if (!r.d_squared || !r.directed || !r.chain_map || !r.degree_preserving)
        throw InvariantFailure("universality invariants fail: " + r.failure);
    Output o;
    o.result["g_dims"] = degree_map(r.g_dims);
    o.result["hochschild_betti"] = degree_map(r.hochschild_betti);
    o.result["quasi_iso"] = r.quasi_iso;
    Json higher = Json::object();
    for (const auto& [n, k] : r.psi_components)
        if (n >= 2)
            higher[std::to_string(n)] = k;
    o.result["psi_higher_components"] = higher;
    Json iso = Json::object();
    for (const auto& [k, ok] : r.iso_in_degree)
        iso[std::to_string(k)] = ok;
    o.result["diagnostics"] = {{"directed", r.directed},
                               {"chain_map", r.chain_map},
                               {"degree_preserving", r.degree_preserving},
                               {"one_finite_matches", r.one_finite_matches},
                               {"iso_in_degree", iso},
                               {"iso_away_from_degree_0", r.iso_away_from_zero},
                               {"degree_0_edge_rescalings", r.edge_rescalings},
                               {"degree_0_is_edge_rescalings", r.degree0_is_rescalings},
                               {"handle_filtration", r.filtration},
                               {"gr0_convex_paths", r.gr0_image}};
    return o;
}

Output cmd_web_export(const Context& cx)
{
    require_plane(cx);
    const PointConfig& c = cx.config;
    if (c.has_infinity())
        throw std::invalid_argument("web-export works on finite configurations");
    SecondaryOptions so;
    so.seed = cx.spec.seed;
    so.jobs = cx.spec.jobs;
    auto sp = build_secondary(c, c.all(), so);
    Output o;
    Json webs = Json::array();
    std::ostringstream dot;
    dot << "graph webs {\n";
    for (std::size_t f = 0; f < sp.faces.size(); ++f) {
        const auto& s = sp.faces[f].subdivision;
        auto w = dual_web(c, s);
        if (!web_condition_holds(c, s, w))
            throw InvariantFailure("web condition fails for " + cell_list(c, s.cells));
        Json vs = Json::array(), es = Json::array(), rs = Json::array();
        dot << "  subgraph cluster_" << f << " {\n    label=\"" << dot_escape(cell_list(c, s.cells)) << "\";\n";
        for (std::size_t k = 0; k < w.vertices.size(); ++k) {
            vs.push_back({{"cell", labels_json(c, w.vertices[k].cell)}, {"position", rationals_json(w.vertices[k].position)}});
            dot << "    w" << f << "_" << k << " [label=\"" << dot_escape(cell_name(c, w.vertices[k].cell))
                << "\", exact_pos=\"" << to_string(w.vertices[k].position[0]) << ","
                << to_string(w.vertices[k].position[1]) << "\"];\n";
        }
        for (const auto& e : w.edges) {
            es.push_back({{"from", e.from}, {"to", e.to}, {"wall", labels_json(c, bit(e.wall_i) | bit(e.wall_j))}});
            dot << "    w" << f << "_" << e.from << " -- w" << f << "_" << e.to << " [label=\""
                << dot_escape(cell_name(c, bit(e.wall_i) | bit(e.wall_j))) << "\"];\n";
        }
        for (std::size_t k = 0; k < w.rays.size(); ++k) {
            const auto& r = w.rays[k];
            rs.push_back({{"from", r.from},
                          {"wall", labels_json(c, bit(r.wall_i) | bit(r.wall_j))},
                          {"direction", rationals_json(r.direction)}});
            dot << "    r" << f << "_" << k << " [shape=point];\n    w" << f << "_" << r.from << " -- r" << f << "_"
                << k << " [exact_dir=\"" << to_string(r.direction[0]) << "," << to_string(r.direction[1])
                << "\"];\n";
        }
        dot << "  }\n";
        webs.push_back({{"cells", cells_json(c, s.cells)},
                        {"vertices", vs},
                        {"edges", es},
                        {"rays", rs},
                        {"web_condition", true}});
    }
    dot << "}\n";
    o.result["count"] = webs.size();
    o.result["regular_subdivisions"] = sp.faces.size();
    o.result["webs"] = webs;
    o.dot = dot.str();
    return o;
}

using Handler = Output (*)(const Context&);

const std::map<std::string, std::pair<Handler, bool>>& handlers()
{
    // second: whether a DOT export exists
    static const std::map<std::string, std::pair<Handler, bool>> h{
        {"check", {cmd_check, false}},
        {"triangulations", {cmd_triangulations, true}},
        {"secondary", {cmd_secondary, true}},
        {"linfty", {cmd_linfty, false}},
        {"mc", {cmd_mc, false}},
        {"relative-r", {cmd_relative_r, false}},
        {"relative-psi", {cmd_relative_psi, false}},
        {"universality", {cmd_universality, false}},
        {"web-export", {cmd_web_export, true}},
    };
    return h;
}

bool needs_infinity(const std::string& command, std::size_t d)
{
    return command == "relative-psi" || command == "universality" || (command == "relative-r" && d == 2);
}

} // namespace

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names{"check",        "triangulations", "secondary",
                                                "linfty",       "mc",             "relative-r",
                                                "relative-psi", "universality",   "web-export"};
    return names;
}

RunResult run(const JobSpec& spec, std::string_view input_text)
{
    RunResult res;
    try {
        auto it = handlers().find(spec.command);
        if (it == handlers().end())
            throw std::invalid_argument("unknown command " + spec.command);
        if (spec.format != "json" && spec.format != "dot")
            throw std::invalid_argument("unknown format " + spec.format);
        if (spec.format == "dot" && !it->second.second)
            throw std::invalid_argument(spec.command + " has no DOT export");
        if (spec.jobs == 0)
            throw std::invalid_argument("--jobs must be positive");

        InputDocument doc = parse_input(input_text);
        if (doc.config.size() > spec.max_size)
            throw std::invalid_argument("input has " + std::to_string(doc.config.size()) +
                                        " points, more than --max-size " + std::to_string(spec.max_size));
        Context cx{spec, doc.config, doc.coefficients, sha256_hex(input_text)};
        if (needs_infinity(spec.command, cx.config.dim()))
            cx.config = with_default_infinity(cx.config);
        if (spec.command != "check") {
            auto gp = check_general_position(cx.config);
            if (!gp.pass) {
                std::string w;
                for (const auto& v : gp.violations) {
                    w += " {";
                    for (std::size_t k = 0; k < v.size(); ++k)
                        w += (k ? "," : "") + v[k];
                    w += "}";
                }
                throw std::invalid_argument("configuration is not in general position:" + w);
            }
        }

        Output out = it->second.first(cx);
        Json infinity = nullptr;
        if (cx.config.has_infinity())
            infinity = rationals_json(cx.config.infinity_direction());
        if (spec.format == "dot") {
            std::ostringstream s;
            s << "// infrared " << kToolVersion << " command=" << spec.command << " input_sha256=" << cx.input_hash
              << " seed=" << spec.seed << " infinity=" << infinity.dump() << "\n"
              << out.dot;
            res.output = s.str();
        } else {
            Json j;
            j["tool"] = "infrared";
            j["version"] = kToolVersion;
            j["command"] = spec.command;
            j["input_sha256"] = cx.input_hash;
            j["seed"] = spec.seed;
            j["infinity"] = infinity;
            j["geometric_only"] = spec.geometric_only;
            j["flip_orientation"] = spec.flip_orientation;
            j["result"] = out.result;
            res.output = j.dump(2) + "\n";
        }
        if (spec.command == "check" && !out.result["general_position"].get<bool>())
            res.status = 1;
    } catch (const InvariantFailure& e) {
        res.status = 2;
        res.error = std::string("internal invariant failed: ") + e.what();
    } catch (const std::logic_error& e) {
        // std::invalid_argument is a logic_error too, so it is told apart here
        if (dynamic_cast<const std::invalid_argument*>(&e)) {
            res.status = 1;
            res.error = e.what();
        } else {
            res.status = 2;
            res.error = std::string("internal invariant failed: ") + e.what();
        }
    } catch (const std::exception& e) {
        res.status = 2;
        res.error = std::string("internal error: ") + e.what();
    }
    return res;
}

int cli_main(int argc, char** argv)
{
    CLI::App app{"Secondary polytopes and the algebra of the infrared, in exact arithmetic"};
    app.set_version_flag("--version", std::string(kToolVersion));
    JobSpec spec;
    app.add_option("command", spec.command, "What to compute")
        ->required()
        ->check(CLI::IsMember(command_names()));
    app.add_option("-i,--input", spec.input, "Configuration JSON ('-' for stdin)");
    app.add_option("-o,--output", spec.output, "Where to write the report ('-' for stdout)");
    app.add_option("--format", spec.format, "Report format")->check(CLI::IsMember({"json", "dot"}));
    app.add_flag("--geometric-only", spec.geometric_only, "Use the geometric algebra instead of the marked one");
    app.add_flag("--flip-orientation", spec.flip_orientation, "Reverse the ambient orientation");
    app.add_option("--seed", spec.seed, "Random seed");
    app.add_option("--jobs", spec.jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--oracle", spec.oracle, "Run the brute-force cross-checks as well");
    app.add_option("--max-size", spec.max_size, "Refuse inputs with more points");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    std::string text;
    if (spec.input == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        text = s.str();
    } else {
        std::ifstream in(spec.input, std::ios::binary);
        if (!in) {
            std::cerr << "cannot read " << spec.input << "\n";
            return 1;
        }
        std::ostringstream s;
        s << in.rdbuf();
        text = s.str();
    }

    RunResult r = run(spec, text);
    if (!r.error.empty())
        std::cerr << spec.command << ": " << r.error << "\n";
    if (!r.output.empty()) {
        if (spec.output == "-") {
            std::cout << r.output;
        } else {
            std::ofstream out(spec.output, std::ios::binary);
            if (!out) {
                std::cerr << "cannot write " << spec.output << "\n";
                return 1;
            }
            out << r.output;
        }
    }
    return r.status;
}

} // namespace ir
