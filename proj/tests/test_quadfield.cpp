#include "doctest.h"

#include <vector>

#include "k0lat/error.hpp"
#include "k0lat/quadfield.hpp"
#include "quad_oracles.hpp"

using namespace k0lat;

TEST_CASE("field construction and arithmetic")
{
    CHECK_THROWS_AS(RealQuadraticField(1), Error);
    CHECK_THROWS_AS(RealQuadraticField(12), Error);
    CHECK_THROWS_AS(RealQuadraticField(-5), Error);
    RealQuadraticField q5(5);
    CHECK(q5.half_integral_basis());
    CHECK(q5.discriminant() == 5);
    CHECK(RealQuadraticField(3).discriminant() == 12);
    QuadElement w = q5.from_basis(0, 1);
    CHECK(w == QuadElement{Rat(1, 2), Rat(1, 2)});
    // w^2 = w + 1
    CHECK(q5.multiply(w, w) == q5.add(w, q5.from_basis(1, 0)));
    CHECK(q5.is_integral(w));
    CHECK_FALSE(q5.is_integral({Rat(1, 2), Rat(0)}));
    CHECK(q5.sign({Rat(-2), Rat(1)}) == 1);
    CHECK(q5.sign({Rat(3), Rat(-2)}) == -1);
    CHECK(q5.multiply(w, q5.inverse(w)) == QuadElement{Rat(1), Rat(0)});
}

TEST_CASE("fundamental_unit examples")
{
    CHECK(fundamental_unit(RealQuadraticField(2)) == QuadElement{Rat(1), Rat(1)});
    CHECK(fundamental_unit(RealQuadraticField(5)) == QuadElement{Rat(1, 2), Rat(1, 2)});
    CHECK(fundamental_unit(RealQuadraticField(3)) == QuadElement{Rat(2), Rat(1)});
    RealQuadraticField q2(2), q3(3);
    CHECK(q2.norm(fundamental_unit(q2)) == -1);
    CHECK(q3.norm(fundamental_unit(q3)) == 1);
    // 94 has a large unit: 2143295 + 221064 sqrt(94)
    CHECK(fundamental_unit(RealQuadraticField(94)) == QuadElement{Rat(2143295), Rat(221064)});
}

TEST_CASE("fundamental_unit against brute force")
{
    for (long d = 2; d <= 120; ++d) {
        if (!quad_oracle::squarefree(d)) continue;
        RealQuadraticField f(d);
        QuadElement u = fundamental_unit(f);
        CAPTURE(d);
        CHECK(f.is_integral(u));
        CHECK(abs(f.norm(u)) == 1);
        CHECK(u.x > 0);
        CHECK(u.y > 0);
        auto brute = quad_oracle::least_unit(d, 20000);
        if (brute) CHECK(*brute == std::make_pair(u.x, u.y));
        else CHECK((d % 4 == 1 ? Rat(u.y * 2) : u.y) > 20000);
    }
}

TEST_CASE("factor_rational_prime examples")
{
    RealQuadraticField q2(2);
    auto f2 = factor_rational_prime(q2, Int(2));
    CHECK(f2.type == Splitting::Ramified);
    REQUIRE(f2.primes.size() == 1);
    CHECK(f2.primes[0].ideal == q2.principal({Rat(0), Rat(1)}));
    CHECK(f2.primes[0].ideal.norm() == 2);

    auto f7 = factor_rational_prime(q2, Int(7));
    CHECK(f7.type == Splitting::Split);
    CHECK(f7.primes.size() == 2);
    CHECK(factor_rational_prime(q2, Int(3)).type == Splitting::Inert);
    CHECK(factor_rational_prime(q2, Int(3)).primes[0].ideal.norm() == 9);
    CHECK_THROWS_AS(factor_rational_prime(q2, Int(9)), Error);
    try {
        factor_rational_prime(q2, Int(1));
        FAIL("expected NotPrime");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotPrime);
    }
}

TEST_CASE("splitting type matches residue symbols")
{
    for (long d : {2L, 3L, 5L, 6L, 7L, 10L, 13L, 15L, 17L, 21L, 33L, 41L}) {
        RealQuadraticField f(d);
        const long disc = d % 4 == 1 ? d : 4 * d;
        for (std::uint64_t p : primes_up_to(60)) {
            auto fac = factor_rational_prime(f, Int(p));
            const long pl = static_cast<long>(p);
            Splitting expected;
            if (disc % pl == 0) expected = Splitting::Ramified;
            else if (p == 2) expected = (d % 8 == 1) ? Splitting::Split : Splitting::Inert;
            else expected = quad_oracle::is_square_mod(disc, pl) ? Splitting::Split : Splitting::Inert;
            CAPTURE(d);
            CAPTURE(p);
            CHECK(fac.type == expected);
            Int norm_product = 1;
            for (const auto& rho : fac.primes) norm_product *= rho.ideal.norm();
            CHECK(norm_product == (fac.type == Splitting::Ramified ? Int(pl) : Int(pl * pl)));
            for (const auto& rho : fac.primes) {
                CHECK(f.contains(rho.ideal, f.from_basis(Int(pl), 0)));
                if (fac.type != Splitting::Inert) CHECK(f.contains(rho.ideal, rho.second_generator));
                CHECK(valuation(f, rho, f.from_basis(Int(pl), 0)) == (fac.type == Splitting::Ramified ? 2 : 1));
            }
        }
    }
}

TEST_CASE("is_principal examples")
{
    RealQuadraticField q2(2);
    auto f2 = factor_rational_prime(q2, Int(2));
    CHECK(is_principal(q2, {f2}, {0}) == QuadElement{Rat(1), Rat(0)});
    CHECK(is_principal(q2, {f2}, {2}) == QuadElement{Rat(2), Rat(0)});
    auto inv = is_principal(q2, {f2}, {-1});
    REQUIRE(inv);
    CHECK(valuation(q2, f2.primes[0], *inv) == -1);
    CHECK(abs(q2.norm(*inv)) == Rat(1, 2));

    RealQuadraticField q10(10);
    auto f10 = factor_rational_prime(q10, Int(2));
    CHECK_FALSE(is_principal(q10, {f10}, {1}));
    CHECK(quad_oracle::norm_form_represents(10, 2, 200) == false);
    CHECK(is_principal(q10, {f10}, {2}) == QuadElement{Rat(2), Rat(0)});
    try {
        is_principal(q10, {f10}, {1}, 1);
        FAIL("expected SearchBoundExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SearchBoundExceeded);
    }
    CHECK_THROWS_AS(is_principal(q10, {f10}, {17}), Error);
    CHECK_THROWS_AS(is_principal(q10, {f10}, {1, 1}), Error);
}

TEST_CASE("md_orbit_count spot values match element enumeration")
{
    struct Spot {
        long d, big_d;
        std::size_t count;
        long bound;
    };
    for (const auto& s : {Spot{2, 1, 1, 1}, Spot{2, 2, 5, 5}, Spot{10, 2, 3, 5}, Spot{2, 6, 15, 15}}) {
        MDReport r = md_orbit_count(RealQuadraticField(s.d), Int(s.big_d));
        CAPTURE(s.d);
        CAPTURE(s.big_d);
        CHECK(r.count == s.count);
        CHECK(r.bound == s.bound);
        CHECK(quad_oracle::md_orbits(s.d, s.big_d, 50) == s.count);
    }
    for (long d : {3L, 5L, 10L, 15L})
        for (long big_d : {2L, 3L, 4L, 5L, 6L}) {
            CAPTURE(d);
            CAPTURE(big_d);
            CHECK(md_orbit_count(RealQuadraticField(d), Int(big_d)).count == quad_oracle::md_orbits(d, big_d, 50));
        }
}

TEST_CASE("md_orbit_count sweep")
{
    for (long d : {2L, 3L, 5L, 10L, 15L}) {
        RealQuadraticField f(d);
        const bool class_number_one = d == 2 || d == 3 || d == 5;
        for (long big_d = 1; big_d <= 30; ++big_d) {
            MDReport r = md_orbit_count(f, Int(big_d));
            CAPTURE(d);
            CAPTURE(big_d);
            CHECK(Int(static_cast<long>(r.count)) <= r.bound);
            CHECK(r.count % 2 == 1);
            CHECK(Int(static_cast<long>(r.verdicts.size())) == r.bound);
            if (class_number_one) CHECK(Int(static_cast<long>(r.count)) == r.bound);
            // e and -e share a verdict; generators carry the right valuations
            for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
                const auto& v = r.verdicts[i];
                CHECK(v.generator.has_value() == r.verdicts[r.verdicts.size() - 1 - i].generator.has_value());
                if (!v.generator) continue;
                for (std::size_t k = 0; k < r.primes.size(); ++k) CHECK(valuation(f, r.primes[k].rho, *v.generator) == v.exponents[k]);
                // D a and D / a are integral
                QuadElement da{v.generator->x * big_d, v.generator->y * big_d};
                QuadElement inv = f.inverse(*v.generator);
                CHECK(f.is_integral(da));
                CHECK(f.is_integral({inv.x * big_d, inv.y * big_d}));
            }
        }
    }
}
