#include "doctest.h"

#include <random>

#include "k0lat/linalg.hpp"
#include "oracles.hpp"

using namespace k0lat;

TEST_CASE("hnf of identity and zero")
{
    auto r = hnf(IntMatrix::identity(3));
    CHECK(r.h == IntMatrix::identity(3));
    CHECK(r.u == IntMatrix::identity(3));

    auto z = hnf(IntMatrix(2, 2));
    CHECK(z.h.is_zero());
    CHECK(z.u == IntMatrix::identity(2));
    CHECK(z.rank == 0);
}

TEST_CASE("hnf of [[2,4],[6,8]]")
{
    IntMatrix m{{2, 4}, {6, 8}};
    auto r = hnf(m);
    CHECK(r.h == IntMatrix{{2, 0}, {0, 4}});
    CHECK(r.u * m == r.h);
    CHECK(oracle::is_unimodular(r.u));
    CHECK(oracle::is_row_hermite(r.h));
}

TEST_CASE("snf examples")
{
    auto r = snf(IntMatrix{{2, 0}, {0, 3}});
    CHECK(r.s == IntMatrix{{1, 0}, {0, 6}});
    CHECK(r.u * IntMatrix{{2, 0}, {0, 3}} * r.v == r.s);

    CHECK(snf(IntMatrix::identity(4)).s == IntMatrix::identity(4));
    CHECK(snf(IntMatrix(2, 3)).s.is_zero());
}

TEST_CASE("hnf and snf transforms on random matrices")
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 150; ++t) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        IntMatrix m = oracle::random_matrix(rng, r, c, -10, 10);
        auto h = hnf(m);
        REQUIRE(h.u * m == h.h);
        REQUIRE(oracle::is_unimodular(h.u));
        REQUIRE(oracle::is_row_hermite(h.h));
        CHECK(h.rank == oracle::rank_q(m));

        auto s = snf(m);
        REQUIRE(s.u * m * s.v == s.s);
        REQUIRE(oracle::is_unimodular(s.u));
        REQUIRE(oracle::is_unimodular(s.v));
        REQUIRE(oracle::is_smith_diagonal(s.s));
        if (r == c) {
            Int prod = 1;
            for (std::size_t i = 0; i < r; ++i) prod *= s.s(i, i);
            CHECK(prod == abs(oracle::det_cofactor(m)));
        }
    }
}

TEST_CASE("determinant agrees with cofactor expansion")
{
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        std::size_t n = 1 + rng() % 5;
        IntMatrix m = oracle::random_matrix(rng, n, n, -9, 9);
        CHECK(determinant(m) == oracle::det_cofactor(m));
    }
}

TEST_CASE("solve_integer examples")
{
    IntVector b{Int(4), Int(-7), Int(2)};
    auto x = solve_integer(IntMatrix::identity(3), b);
    REQUIRE(x);
    CHECK(*x == b);

    CHECK_FALSE(solve_integer(IntMatrix{{2}}, IntVector{Int(3)}));

    auto y = solve_integer(IntMatrix{{2, 3}}, IntVector{Int(1)});
    REQUIRE(y);
    CHECK(2 * (*y)[0] + 3 * (*y)[1] == 1);

    CHECK_THROWS_AS(solve_integer(IntMatrix{{1, 2}}, IntVector{Int(1), Int(2)}), Error);
}

TEST_CASE("solve_integer agrees with box search")
{
    std::mt19937_64 rng(99);
    for (int t = 0; t < 120; ++t) {
        std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
        IntMatrix a = oracle::random_matrix(rng, r, c, -4, 4);
        IntVector b(r);
        for (auto& v : b) v = oracle::uniform(rng, -6, 6);
        auto x = solve_integer(a, b);
        if (x) CHECK(a * *x == b);
        auto brute = oracle::box_solve(a, b, 20);
        if (brute) CHECK(x.has_value());
    }
}

TEST_CASE("kernel_basis")
{
    auto k = kernel_basis(IntMatrix{{1, 1}});
    REQUIRE(k.size() == 1);
    CHECK(k[0] == IntVector{Int(1), Int(-1)});
    CHECK(kernel_basis(IntMatrix::identity(3)).empty());
    CHECK(kernel_basis(IntMatrix(1, 3)).size() == 3);
}

TEST_CASE("kernel_basis is saturated on random systems")
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 60; ++t) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 6;
        IntMatrix a = oracle::random_matrix(rng, r, c, -5, 5);
        auto k = kernel_basis(a);
        CHECK(k.size() == c - oracle::rank_q(a));
        for (const auto& v : k) CHECK(a * v == IntVector(r));
        if (k.empty()) continue;
        IntMatrix km = IntMatrix::from_rows(c, k);
        auto s = snf(km);
        for (auto d : s.invariant_factors()) CHECK(d == 1);
        CHECK(s.rank == k.size());
    }
}

TEST_CASE("lattice intersection")
{
    IntMatrix a{{2, 0}, {0, 1}};  // 2Z x Z
    IntMatrix b{{1, 0}, {0, 3}};  // Z x 3Z
    CHECK(lattice_intersection(a, b) == IntMatrix{{2, 0}, {0, 3}});
}

TEST_CASE("fp_nullspace")
{
    FpMatrix a(2, 1, 2);
    a(0, 0) = 1;
    a(0, 1) = 1;
    auto n = fp_nullspace(a);
    REQUIRE(n.size() == 1);
    CHECK(n[0] == std::vector<FpElem>{1, 1});
    CHECK(fp_nullspace(FpMatrix::identity(5, 3)).empty());
    CHECK(fp_nullspace(FpMatrix(3, 2, 4)).size() == 4);

    std::mt19937_64 rng(8);
    for (FpElem p : {2u, 3u, 5u, 7u}) {
        for (int t = 0; t < 20; ++t) {
            std::size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
            FpMatrix m(p, r, c);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) m(i, j) = rng() % p;
            auto ns = fp_nullspace(m);
            CHECK(ns.size() + fp_rank(m) == c);
            for (auto& v : ns) {
                auto y = m * v;
                for (auto e : y) CHECK(e == 0);
            }
        }
    }
}

TEST_CASE("prime helpers")
{
    CHECK(primes_up_to(20) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19});
    CHECK(prime_divisors(Int(360)) == std::vector<Int>{Int(2), Int(3), Int(5)});
    CHECK(prime_divisors(Int("1000000000039") * 3) == std::vector<Int>{Int(3), Int("1000000000039")});
    CHECK(fp_inv(3, 7) == 5);
}
