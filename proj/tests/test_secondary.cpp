#include "doctest.h"
#include "oracles/fixtures.hpp"
#include "oracles/oracles.hpp"

#include "infrared/secondary.hpp"

#include <random>

using namespace ir;

namespace {

Subdivision make_sub(Mask parent, std::vector<Mask> cells)
{
    Subdivision s;
    s.parent = parent;
    s.cells = std::move(cells);
    s.canonicalize();
    return s;
}

// Independent GKZ evaluation from raw coordinates.
VecQ gkz_oracle(const PointConfig& c, const std::vector<Mask>& cells)
{
    VecQ phi(c.size());
    for (Mask cell : cells) {
        std::vector<VecQ> m;
        for (int i : bits(cell)) {
            VecQ row{1};
            for (const auto& x : c.coords(i))
                row.push_back(x);
            m.push_back(row);
        }
        Rational v = abs(oracle::cofactor_det(m));
        for (std::size_t k = 2; k <= c.dim(); ++k)
            v /= static_cast<long>(k);
        for (int i : bits(cell))
            phi[i] += v;
    }
    return phi;
}

} // namespace

TEST_CASE("gkz vectors of the square")
{
    auto sq = fixture::square();
    CHECK(gkz_vector(sq, make_sub(sq.all(), {0b0111, 0b1101})) == VecQ{1, Rational(1, 2), 1, Rational(1, 2)});
    CHECK(gkz_vector(sq, make_sub(sq.all(), {0b1011, 0b1110})) == VecQ{Rational(1, 2), 1, Rational(1, 2), 1});
    auto tri = fixture::triangle();
    CHECK(gkz_vector(tri, make_sub(tri.all(), {0b111})) == VecQ{Rational(1, 2), Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("secondary polytope examples")
{
    auto sq = fixture::square();
    auto s = build_secondary(sq, sq.all());
    CHECK(s.dim == 1);
    CHECK(s.faces_of_dim(0).size() == 2);
    CHECK(s.faces_of_dim(1).size() == 1);
    CHECK(s.faces[s.top].subdivision.cells == std::vector<Mask>{0b1111});

    auto pent = fixture::pentagon();
    auto p = build_secondary(pent, pent.all());
    CHECK(p.dim == 2);
    CHECK(p.faces_of_dim(0).size() == 5);
    CHECK(p.faces_of_dim(1).size() == 5);
    CHECK(p.faces_of_dim(2).size() == 1);

    auto tp = fixture::triangle_with_point();
    auto t = build_secondary(tp, tp.all());
    CHECK(t.dim == 1);
    CHECK(t.faces_of_dim(0).size() == 2);
    auto coarse = coarse_subdivisions_of(tp, tp.all());
    REQUIRE(coarse.size() == 2);
    CHECK(coarse[0].cells == std::vector<Mask>{0b0111});
    CHECK(coarse[1].cells.size() == 3);

    auto tri = fixture::triangle();
    auto point = build_secondary(tri, tri.all());
    CHECK(point.dim == 0);
    CHECK(point.faces.size() == 1);
    CHECK(coarse_subdivisions_of(tri, tri.all()).empty());
    CHECK(coarse_subdivisions_of(sq, sq.all()).size() == 2);
}

TEST_CASE("face dictionary: vertices, facets and top")
{
    auto pent = fixture::pentagon();
    auto sp = build_secondary(pent, pent.all());
    for (auto v : sp.faces_of_dim(0))
        CHECK(sp.faces[v].subdivision.is_triangulation(pent));
    for (auto f : sp.faces_of_dim(1))
        CHECK(is_coarse(pent, sp.faces[f].subdivision));
    CHECK(sp.faces[sp.top].subdivision.cells.size() == 1);
}

TEST_CASE("secondary invariants on random configurations")
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 8; ++trial) {
        std::size_t d = trial < 6 ? 2 : 3;
        std::size_t n = d == 2 ? 4 + trial % 4 : 5 + trial % 2;
        auto c = random_config(d, n, rng());
        auto sp = build_secondary(c, c.all());
        CHECK(sp.dim == static_cast<int>(n - d - 1));
        // GKZ sums and oracle agreement, pairwise distinctness.
        Rational vol = polytope_volume(c, c.all());
        for (std::size_t i = 0; i < sp.triangulations.size(); ++i) {
            CHECK(sp.gkz[i] == gkz_oracle(c, sp.triangulations[i].cells));
            Rational sum = 0;
            for (const auto& x : sp.gkz[i])
                sum += x;
            CHECK(sum == Rational(static_cast<long>(d + 1)) * vol);
            for (std::size_t j = 0; j < i; ++j)
                CHECK_FALSE(sp.gkz[i] == sp.gkz[j]);
        }
        // Euler relation for the boundary: sum_{k<dim} (-1)^k f_k = 1 - (-1)^dim.
        long chi = 0;
        for (int k = 0; k < sp.dim; ++k)
            chi += (k % 2 ? -1 : 1) * static_cast<long>(sp.faces_of_dim(k).size());
        CHECK(chi == 1 - (sp.dim % 2 ? -1 : 1));
        // Face <-> subdivision round trip, order matching, geometric up-closure.
        for (std::size_t f = 0; f < sp.faces.size(); ++f) {
            auto s = face_to_subdivision(c, sp, f);
            CHECK(s == sp.faces[f].subdivision);
            CHECK(subdivision_to_face(sp, s) == sp.faces[f].vertices);
            for (auto p : sp.faces[f].parents) {
                CHECK(refines(sp.faces[f].subdivision, sp.faces[p].subdivision));
                if (sp.faces[f].geometric)
                    CHECK(sp.faces[p].geometric);
            }
        }
        for (std::size_t f = 0; f < sp.faces.size(); ++f)
            for (std::size_t g = 0; g < sp.faces.size(); ++g)
                CHECK(sp.faces[f].vertices.subset_of(sp.faces[g].vertices) ==
                      refines(sp.faces[f].subdivision, sp.faces[g].subdivision));
        // Facets are exactly the coarse subdivisions found by direct search (d = 2).
        if (d == 2 && n <= 6) {
            std::vector<std::vector<Mask>> direct;
            for (const auto& cells : oracle::all_subdivisions(c, c.all())) {
                auto s = make_sub(c.all(), cells);
                if (is_coarse(c, s))
                    direct.push_back(cells);
            }
            std::vector<std::vector<Mask>> from_facets;
            for (const auto& s : coarse_subdivisions_of(c, c.all()))
                from_facets.push_back(s.cells);
            CHECK(from_facets == direct);
        }
    }
}

TEST_CASE("factorization examples")
{
    auto sq = fixture::square();
    auto s = build_secondary(sq, sq.all());
    SecondaryCache cache(sq, {});
    auto top = verify_factorization(sq, s, s.top, cache);
    CHECK(top.ok);
    CHECK(top.factor_dims == std::vector<int>{1});
    for (auto v : s.faces_of_dim(0)) {
        auto r = verify_factorization(sq, s, v, cache);
        CHECK(r.ok);
        CHECK(r.factor_dims == std::vector<int>{0, 0});
    }
    // Split of the pentagon along a-c: triangle abc times quadrilateral acde.
    auto pent = fixture::pentagon();
    auto p = build_secondary(pent, pent.all());
    SecondaryCache pc(pent, {});
    auto id = p.find({0b00111, 0b11101});
    REQUIRE(id);
    auto r = verify_factorization(pent, p, *id, pc);
    CHECK(r.ok);
    CHECK(r.factor_dims == std::vector<int>{0, 1});
}

TEST_CASE("factorization holds on every face of random configurations")
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 4; ++trial) {
        auto c = random_config(2, 5 + trial % 2, rng());
        auto sp = build_secondary(c, c.all());
        SecondaryCache cache(c, {});
        for (std::size_t f = 0; f < sp.faces.size(); ++f)
            CHECK(verify_factorization(c, sp, f, cache).ok);
    }
}

TEST_CASE("dual webs")
{
    auto sq = fixture::square();
    auto one = lower_hull_subdivision(sq, sq.all(), {0, 0, 0, 0});
    auto w1 = dual_web(sq, one);
    CHECK(w1.vertices.size() == 1);
    CHECK(w1.edges.empty());
    CHECK(w1.rays.size() == 4);

    auto pent = fixture::pentagon();
    auto split = lower_hull_subdivision(pent, pent.all(), {0, 0, 0, 7, 8});
    REQUIRE(split.cells.size() == 2);
    auto w2 = dual_web(pent, split);
    CHECK(w2.vertices.size() == 2);
    CHECK(w2.edges.size() == 1);
    CHECK(web_condition_holds(pent, split, w2));
    CHECK_FALSE(w2.vertices[0].position == w2.vertices[1].position);

    // Hexagon cut by the diagonals i-m, m-j, j-l: a path of three internal edges and six rays.
    auto hex = fixture::make(2, {{"i", {0, 6}}, {"j", {6, 6}}, {"k", {9, 3}}, {"l", {6, 0}}, {"m", {0, 0}}, {"n", {-3, 3}}});
    auto fig = make_sub(hex.all(), {hex.mask_of_labels({"n", "i", "m"}), hex.mask_of_labels({"i", "m", "j"}),
                                    hex.mask_of_labels({"m", "j", "l"}), hex.mask_of_labels({"j", "k", "l"})});
    auto reg = is_regular(hex, fig);
    REQUIRE(reg.regular);
    fig.certificate = reg.certificate;
    auto w4 = dual_web(hex, fig);
    CHECK(w4.vertices.size() == 4);
    CHECK(w4.edges.size() == 3);
    CHECK(w4.rays.size() == 6);
    CHECK(web_condition_holds(hex, fig, w4));
    CHECK_THROWS(dual_web(fixture::interval(3), lower_hull_subdivision(fixture::interval(3), 0b111, {0, 0, 0})));
}
