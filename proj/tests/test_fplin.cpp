#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "thh/fplin.hpp"

using namespace thh;

namespace {
std::vector<std::vector<int>> dense(const SparseMat& m)
{
    std::vector<std::vector<int>> d(m.rows, std::vector<int>(m.cols, 0));
    for (auto& [r, c, v] : m.entries) d[r][c] = oracle::md(d[r][c] + v, m.p);
    return d;
}

SparseMat random_mat(std::mt19937& g, int p, int r, int c, double density)
{
    SparseMat m(p, r, c);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> s(1, p - 1);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (u(g) < density) m.add(i, j, s(g));
    return m;
}
}  // namespace

TEST_CASE("rank small cases")
{
    SparseMat id(2, 2, 2);
    id.add(0, 0, 1);
    id.add(1, 1, 1);
    CHECK(rank(id) == 2);
    CHECK(rank(SparseMat(2, 3, 4)) == 0);
    SparseMat twice(2, 1, 1);
    twice.add(0, 0, 1);
    twice.add(0, 0, 1);
    CHECK(rank(twice) == 0);
    SparseMat three(3, 1, 1);
    three.add(0, 0, 1);
    three.add(0, 0, 1);
    CHECK(rank(three) == 1);
}

TEST_CASE("kernel basis")
{
    SparseMat m(2, 1, 2);
    m.add(0, 0, 1);
    m.add(0, 1, 1);
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 1);
    CHECK(k[0] == SparseVec{{0, 1}, {1, 1}});

    SparseMat id(5, 3, 3);
    for (int i = 0; i < 3; ++i) id.add(i, i, 1);
    CHECK(kernel_basis(id).empty());
}

TEST_CASE("quotient basis")
{
    auto q = quotient_basis(2, 3, {{{0, 1}}});
    CHECK(q.size() == 2);
    CHECK(quotient_basis(2, 2, {{{0, 1}}, {{0, 1}, {1, 1}}}).empty());
    /* V = {x,y}, V(x)V = {xx, xy, yx, yy}, C_2 swaps xy and yx */
    auto c = quotient_basis(2, 4, {{{1, 1}, {2, 1}}});
    CHECK(c.size() == 3);
}

TEST_CASE("randomized rank against dense elimination")
{
    std::mt19937 g(12345);
    for (int p : {2, 3, 5, 7}) {
        for (int trial = 0; trial < 40; ++trial) {
            int r = 1 + (int)(g() % 64), c = 1 + (int)(g() % 64);
            double dens = (g() % 4 + 1) / 10.0;
            auto m = random_mat(g, p, r, c, dens);
            int rk = rank(m);
            CHECK(rk == oracle::dense_rank(dense(m), p));
            auto ker = kernel_basis(m);
            CHECK((int)ker.size() + rk == c);
            for (auto& v : ker) CHECK(m.apply(v).empty());
        }
    }
}

TEST_CASE("rref is idempotent")
{
    std::mt19937 g(7);
    for (int p : {2, 3}) {
        auto m = random_mat(g, p, 20, 30, 0.2);
        auto rows = m.row_vectors();
        auto b1 = rref_basis(p, 30, rows);
        auto b2 = rref_basis(p, 30, b1);
        CHECK(b1 == b2);
    }
}

TEST_CASE("echelon normal form")
{
    Echelon E(3, 3);
    E.add(SparseVec{{0, 1}, {1, 2}});
    CHECK(E.in_span(SparseVec{{0, 2}, {1, 1}}));
    CHECK_FALSE(E.in_span(SparseVec{{1, 1}}));
    auto nf = E.normal_form(SparseVec{{0, 1}});
    CHECK(nf.count(0) == 0);
}
