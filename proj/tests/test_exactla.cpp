#include "doctest.h"
#include "oracles/oracles.hpp"

#include "infrared/complex.hpp"
#include "infrared/lp.hpp"
#include "infrared/matrix.hpp"

#include <random>

using namespace ir;

namespace {

MatrixQ dense(std::vector<VecQ> rows) { return MatrixQ::from_dense(rows); }

VecQ random_vec(std::mt19937_64& rng, std::size_t n, int lo, int hi, int zero_bias = 0)
{
    std::uniform_int_distribution<int> dist(lo, hi), z(0, 9);
    VecQ v(n);
    for (auto& x : v)
        x = z(rng) < zero_bias ? 0 : dist(rng);
    return v;
}

} // namespace

TEST_CASE("rational parsing and printing")
{
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational(" -4/2 ")) == "-2");
    CHECK_THROWS(parse_rational("2/-1"));
    CHECK(to_string(parse_rational("7")) == "7");
    CHECK(to_string(parse_rational("-0/5")) == "0");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("1.5"));
    CHECK_THROWS(parse_rational(""));
}

TEST_CASE("rank examples")
{
    CHECK(rank(MatrixQ::identity(2)) == 2);
    CHECK(rank(MatrixQ(3, 4)) == 0);
    CHECK(rank(dense({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("matrix never stores zeros")
{
    MatrixQ m(2, 2);
    m.set(0, 0, 1);
    m.add(0, 0, -1);
    CHECK(m.nonzeros() == 0);
    m.set(1, 1, Rational(1, 3));
    CHECK(m.get(1, 1) == Rational(1, 3));
    CHECK((m - m).is_zero());
}

TEST_CASE("kernel examples")
{
    CHECK(kernel_basis(MatrixQ::identity(3)).empty());
    auto k = kernel_basis(dense({{1, -1}}));
    REQUIRE(k.size() == 1);
    CHECK(k[0] == VecQ{1, 1});
    // Circuit matrix of the square: one relation on four simplices.
    auto ks = kernel_basis(dense({{1, 1, -1, -1}}));
    CHECK(ks.size() == 3);
}

TEST_CASE("rank matches dense oracle and rank-nullity holds")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
        std::vector<VecQ> rows;
        for (std::size_t i = 0; i < r; ++i)
            rows.push_back(random_vec(rng, c, -3, 3, 4));
        // Force some dependencies.
        if (r > 2)
            for (std::size_t j = 0; j < c; ++j)
                rows[r - 1][j] = rows[0][j] * Rational(2, 3) - rows[1][j];
        MatrixQ m = dense(rows);
        std::size_t rk = rank(m);
        CHECK(rk == oracle::dense_rank(rows));
        auto ker = kernel_basis(m);
        CHECK(rk + ker.size() == c);
        for (const auto& v : ker) {
            VecQ img = m.apply(v);
            for (const auto& x : img)
                CHECK(x == 0);
        }
        CHECK(rank_of_rows(ker.empty() ? std::vector<VecQ>{} : ker) == ker.size());
    }
}

TEST_CASE("determinant matches cofactor expansion")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng() % 5;
        std::vector<VecQ> m;
        for (std::size_t i = 0; i < n; ++i) {
            VecQ row = random_vec(rng, n, -4, 4, 3);
            row[rng() % n] /= 3;
            m.push_back(row);
        }
        CHECK(determinant(m) == oracle::cofactor_det(m));
    }
}

TEST_CASE("integer kernel is a lattice basis of the integer kernel")
{
    std::vector<std::vector<Integer>> m = {{1, 1, -1, -1}};
    auto b = integer_kernel_basis(m, 4);
    CHECK(b.size() == 3);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t r = 1 + rng() % 3, c = 2 + rng() % 5;
        std::vector<std::vector<Integer>> a(r, std::vector<Integer>(c));
        for (auto& row : a)
            for (auto& x : row)
                x = static_cast<long>(rng() % 7) - 3;
        auto basis = integer_kernel_basis(a, c);
        std::vector<VecQ> qa;
        for (auto& row : a) {
            VecQ q;
            for (auto& x : row)
                q.emplace_back(x);
            qa.push_back(q);
        }
        CHECK(basis.size() + oracle::dense_rank(qa) == c);
        for (const auto& v : basis)
            for (const auto& row : a) {
                Integer s = 0;
                for (std::size_t j = 0; j < c; ++j)
                    s += row[j] * v[j];
                CHECK(s == 0);
            }
    }
}

TEST_CASE("lp examples")
{
    auto r = lp_strict_feasible(1, {}, {{{1}, 0}, {{-1}, -1}});
    REQUIRE(r.feasible);
    CHECK(r.witness[0] > 0);
    CHECK(r.witness[0] < 1);
    CHECK_FALSE(lp_strict_feasible(1, {}, {{{1}, 0}, {{-1}, 0}}).feasible);
    // Unbounded slack is capped at one.
    auto u = lp_strict_feasible(1, {}, {{{1}, 0}});
    CHECK(u.feasible);
    CHECK(u.slack == 1);
    // Square diagonal folding: lift (0,0),(1,1) to 0 and (1,0),(0,1) to 1.
    // Variables psi_00, psi_10, psi_11, psi_01. Cells {00,10,11} and {00,11,01}
    // along the diagonal 00-11: the apex 01 sits strictly above the plane of {00,10,11},
    // i.e. psi_01 > psi_00 - psi_10 + psi_11.
    auto sq = lp_strict_feasible(4, {}, {{{-1, 1, -1, 1}, 0}});
    CHECK(sq.feasible);
    CHECK(dot(VecQ{-1, 1, -1, 1}, VecQ{0, 1, 0, 1}) > 0);
}

TEST_CASE("lp agrees with Fourier-Motzkin on random systems")
{
    std::mt19937_64 rng(2024);
    int feasible = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = 1 + rng() % 4;
        std::vector<LinearConstraint> eq, st;
        std::size_t ne = rng() % 2, ns = 1 + rng() % 5;
        for (std::size_t i = 0; i < ne; ++i)
            eq.push_back({random_vec(rng, n, -2, 2), Rational(static_cast<long>(rng() % 5) - 2)});
        for (std::size_t i = 0; i < ns; ++i)
            st.push_back({random_vec(rng, n, -3, 3), Rational(static_cast<long>(rng() % 5) - 2)});
        auto res = lp_strict_feasible(n, eq, st);
        bool fm = oracle::fourier_motzkin_feasible(n, eq, st);
        CHECK(res.feasible == fm);
        feasible += res.feasible;
    }
    // Both outcomes must be exercised.
    CHECK(feasible > 30);
    CHECK(feasible < 270);
}

TEST_CASE("cohomology examples")
{
    ChainComplexQ c;
    c.basis[0] = {"a"};
    c.basis[1] = {"b"};
    c.differential[0] = MatrixQ::identity(1);
    auto h = cohomology(c);
    CHECK(h.betti[0] == 0);
    CHECK(h.betti[1] == 0);

    ChainComplexQ z;
    z.basis[0] = {"a", "b"};
    z.basis[2] = {"c"};
    auto hz = cohomology(z);
    CHECK(hz.betti[0] == 2);
    CHECK(hz.betti[2] == 1);
    CHECK(hz.representatives[0].size() == 2);

    // Augmented cochain complex of a 1-simplex: k -> k^2 -> k (vertices, edge).
    ChainComplexQ s;
    s.basis[-1] = {"empty"};
    s.basis[0] = {"v0", "v1"};
    s.basis[1] = {"e"};
    s.differential[-1] = dense({{1}, {1}});
    s.differential[0] = dense({{-1, 1}});
    auto hs = cohomology(s);
    for (auto [k, b] : hs.betti)
        CHECK(b == 0);

    ChainComplexQ bad;
    bad.basis[0] = {"a"};
    bad.basis[1] = {"b"};
    bad.basis[2] = {"c"};
    bad.differential[0] = MatrixQ::identity(1);
    bad.differential[1] = MatrixQ::identity(1);
    CHECK_THROWS(cohomology(bad));
}

TEST_CASE("euler characteristic identity on random complexes")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        // Build d1 d0 = 0 by taking d1 with rows in the left kernel of d0.
        std::size_t n0 = 1 + rng() % 4, n1 = 1 + rng() % 5, n2 = 1 + rng() % 4;
        std::vector<VecQ> d0;
        for (std::size_t i = 0; i < n1; ++i)
            d0.push_back(random_vec(rng, n0, -2, 2, 3));
        MatrixQ m0 = dense(d0);
        auto left = kernel_basis(m0.transpose());
        MatrixQ m1(n2, n1);
        for (std::size_t i = 0; i < n2; ++i)
            for (std::size_t k = 0; k < left.size(); ++k) {
                Rational f = static_cast<long>(rng() % 3) - 1;
                for (std::size_t j = 0; j < n1; ++j)
                    m1.add(i, j, f * left[k][j]);
            }
        ChainComplexQ c;
        c.basis[0] = std::vector<std::string>(n0, "x");
        c.basis[1] = std::vector<std::string>(n1, "y");
        c.basis[2] = std::vector<std::string>(n2, "z");
        c.differential[0] = m0;
        c.differential[1] = m1;
        auto h = cohomology(c);
        std::map<int, std::size_t> dims{{0, n0}, {1, n1}, {2, n2}};
        CHECK(euler_characteristic(dims) == euler_characteristic(h.betti));
        for (auto [k, reps] : h.representatives)
            CHECK(reps.size() == h.betti[k]);
    }
}

TEST_CASE("quasi-isomorphism examples")
{
    ChainComplexQ z;
    z.basis[0] = {"a", "b"};
    z.basis[1] = {"c"};
    z.differential[0] = dense({{1, -1}});
    std::map<int, MatrixQ> id{{0, MatrixQ::identity(2)}, {1, MatrixQ::identity(1)}};
    auto r = is_quasi_iso(id, z, z);
    CHECK(r.chain_map);
    CHECK(r.quasi_iso);

    std::map<int, MatrixQ> zero{{0, MatrixQ(2, 2)}, {1, MatrixQ(1, 1)}};
    auto r0 = is_quasi_iso(zero, z, z);
    CHECK(r0.chain_map);
    CHECK_FALSE(r0.quasi_iso);

    // Not a chain map: identity in degree 0 and zero in degree 1.
    std::map<int, MatrixQ> bad{{0, MatrixQ::identity(2)}, {1, MatrixQ(1, 1)}};
    auto rb = is_quasi_iso(bad, z, z);
    CHECK_FALSE(rb.chain_map);
    CHECK(rb.first_violation == 0);

    // Inclusion of the cohomology (zero differential) into a complex.
    ChainComplexQ h;
    h.basis[0] = {"s"};
    std::map<int, MatrixQ> inc{{0, dense({{1}, {1}})}};
    auto ri = is_quasi_iso(inc, h, z);
    CHECK(ri.chain_map);
    CHECK(ri.quasi_iso);
}
