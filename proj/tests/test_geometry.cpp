#include "doctest.h"
#include "oracles/fixtures.hpp"
#include "oracles/oracles.hpp"

#include "infrared/geometry.hpp"

#include <random>

using namespace ir;

TEST_CASE("orient examples")
{
    auto c = fixture::make(2, {{"o", {0, 0}}, {"x", {1, 0}}, {"y", {0, 1}}}, fixture::up());
    CHECK(c.orient({0, 1, 2}) == 1);
    CHECK(c.orient({0, 2, 1}) == -1);
    CHECK(c.orient({0, 1, 0}) == 0);
    // (0,0), (1,0), infinity with u = (0,1).
    CHECK(c.orient({0, 1, static_cast<int>(c.infinity_index())}) == 1);
}

TEST_CASE("orient matches cofactor determinant, is alternating and translation invariant")
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t d = 1 + rng() % 3;
        auto c = random_config(d, d + 3, rng(), 10);
        std::vector<Point> shifted = c.points();
        for (auto& p : shifted)
            for (std::size_t k = 0; k < d; ++k)
                p.coords[k] += Rational(static_cast<long>(k) + 3, 7);
        PointConfig t(d, shifted);
        std::vector<int> refs;
        for (std::size_t i = 0; i <= d; ++i)
            refs.push_back(static_cast<int>(i));
        std::vector<VecQ> m;
        for (int r : refs) {
            VecQ row{1};
            for (const auto& x : c.coords(r))
                row.push_back(x);
            m.push_back(row);
        }
        CHECK(c.orient(refs) == sgn(oracle::cofactor_det(m)));
        CHECK(t.orient(refs) == c.orient(refs));
        std::vector<int> swapped = refs;
        std::swap(swapped[0], swapped[1]);
        CHECK(c.orient(swapped) == -c.orient(refs));
    }
}

TEST_CASE("general position checks")
{
    CHECK(check_general_position(fixture::square()).pass);
    auto col = fixture::make(2, {{"a", {0, 0}}, {"b", {1, 1}}, {"c", {2, 2}}});
    auto rep = check_general_position(col);
    CHECK_FALSE(rep.pass);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0] == std::vector<std::string>{"a", "b", "c"});
    auto sq = fixture::make(2, {{"a", {0, 0}}, {"b", {1, 0}}, {"c", {1, 1}}, {"d", {0, 1}}}, fixture::up());
    CHECK_FALSE(check_general_position(sq).pass);
    auto sheared = fixture::make(2, {{"a", {0, 0}}, {"b", {2, 1}}, {"c", {3, 3}}, {"d", {1, 2}}}, fixture::up());
    CHECK(check_general_position(sheared).pass);
}

TEST_CASE("convex hull examples")
{
    auto tp = fixture::triangle_with_point();
    auto h = convex_hull(tp, tp.all());
    CHECK(tp.labels(h.vertices) == std::vector<std::string>{"a", "b", "c"});
    CHECK(h.facets.size() == 3);
    auto sq = fixture::square();
    auto hs = convex_hull(sq, sq.all());
    CHECK(hs.boundary == std::vector<int>{0, 1, 2, 3});
    auto inf = fixture::make(2, {{"p", {0, 0}}, {"q", {1, 0}}}, fixture::up());
    Mask m = inf.extended_all();
    auto hi = convex_hull(inf, m);
    CHECK(popcount(hi.vertices) == 3);
    CHECK(hi.facets.size() == 3);
    CHECK(hi.boundary == std::vector<int>{0, 1, 2});
    CHECK_THROWS(convex_hull(sq, 0b11));
}

TEST_CASE("circuits")
{
    auto sq = fixture::square();
    auto cs = enumerate_circuits(sq);
    REQUIRE(cs.size() == 1);
    CHECK(sq.labels(cs[0].plus) == std::vector<std::string>{"a", "c"});
    CHECK(sq.labels(cs[0].minus) == std::vector<std::string>{"b", "d"});
    auto tp = fixture::triangle_with_point();
    auto ct = enumerate_circuits(tp);
    REQUIRE(ct.size() == 1);
    CHECK(tp.labels(ct[0].plus) == std::vector<std::string>{"a", "b", "c"});
    CHECK(tp.labels(ct[0].minus) == std::vector<std::string>{"p"});
    CHECK(enumerate_circuits(fixture::triangle()).empty());
}

TEST_CASE("circuit dependencies and Radon property on random configurations")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t d = 2 + rng() % 2;
        auto c = random_config(d, d + 3, rng());
        for (const auto& z : enumerate_circuits(c)) {
            auto idx = bits(z.support);
            Integer sum = 0;
            VecQ comb(d);
            for (std::size_t j = 0; j < idx.size(); ++j) {
                sum += z.dependency[j];
                for (std::size_t k = 0; k < d; ++k)
                    comb[k] += Rational(z.dependency[j]) * c.coords(idx[j])[k];
                CHECK((sgn(z.dependency[j]) > 0) == has(z.plus, idx[j]));
            }
            CHECK(sum == 0);
            for (const auto& x : comb)
                CHECK(x == 0);
            // Radon point: the positive-part barycenter equals the negative-part one.
            Integer wsum = 0;
            for (std::size_t j = 0; j < idx.size(); ++j)
                if (sgn(z.dependency[j]) > 0)
                    wsum += z.dependency[j];
            CHECK(wsum > 0);
            CHECK(popcount(z.plus) + popcount(z.minus) == static_cast<int>(d + 2));
            // A point of one part inside the hull of the other, or the hulls cross.
            if (popcount(z.minus) == 1)
                CHECK(in_hull(c, z.plus, lowest(z.minus)));
        }
    }
}

TEST_CASE("subpolytope enumeration")
{
    CHECK(enumerate_subpolytopes(fixture::square()).size() == 5);
    auto tp = fixture::triangle_with_point();
    auto subs = enumerate_subpolytopes(tp);
    CHECK(subs.size() == 4);
    bool big = false;
    for (const auto& p : subs)
        if (popcount(p.marking) == 4)
            big = p.geometric && popcount(p.vertices) == 3;
    CHECK(big);
    CHECK(enumerate_subpolytopes(fixture::triangle()).size() == 1);
    CHECK(enumerate_marked_subpolytopes(tp).size() == 5);
}

TEST_CASE("infinite subpolytopes")
{
    auto c = fixture::make(2, {{"a", {0, 0}}, {"b", {1, 1}}, {"c", {2, 0}}}, fixture::up());
    auto all = enumerate_subpolytopes(c, true);
    int infinite = 0;
    for (const auto& p : all)
        infinite += p.infinite;
    // {a,b,c} finite. Infinite: {a,b,inf},{b,c,inf},{a,b,c,inf}; {a,c,inf} contains b.
    CHECK(all.size() == 4);
    CHECK(infinite == 3);
}

TEST_CASE("geometric count is affine invariant")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        auto c = random_config(2, 6, rng());
        std::vector<Point> pts = c.points();
        for (auto& p : pts) {
            Rational x = p.coords[0], y = p.coords[1];
            p.coords = {2 * x + y + 1, x - 3 * y - 2};
        }
        PointConfig t(2, pts);
        CHECK(enumerate_subpolytopes(c).size() == enumerate_subpolytopes(t).size());
    }
}

TEST_CASE("simplex volume")
{
    auto sq = fixture::square();
    CHECK(simplex_volume(sq, 0b0111) == Rational(1, 2));
}
