#include "doctest.h"

#include <memory>
#include <random>

#include "k0lat/k0core.hpp"
#include "oracles.hpp"

using namespace k0lat;

namespace {

std::shared_ptr<const Order> zz() { return std::make_shared<const Order>(Order::integers()); }
std::shared_ptr<const Order> zsqrtm5() { return std::make_shared<const Order>(Order::quadratic(0, -5)); }
// Z[2i], the order of conductor 2 in Z[i]
std::shared_ptr<const Order> z2i() { return std::make_shared<const Order>(Order::quadratic(0, -4)); }

LatticeModule ideal_p(const std::shared_ptr<const Order>& o)
{
    return LatticeModule::regular(o).sublattice(IntMatrix{{2, 1}, {0, 1}});
}

// Z[i] viewed as a module over Z[2i]
LatticeModule gaussian_over_z2i(const std::shared_ptr<const Order>& o)
{
    return LatticeModule(o, {IntMatrix::identity(2), IntMatrix{{0, -2}, {2, 0}}});
}

// Level-2 Eichler order {[[a, b], [2c, d]]} acting on Z^2.
struct Eichler {
    std::shared_ptr<const Order> order;
    LatticeModule natural;
};

Eichler eichler()
{
    HomLattice basis{2, 2, {IntMatrix{{1, 0}, {0, 0}}, IntMatrix{{0, 1}, {0, 0}}, IntMatrix{{0, 0}, {2, 0}}, IntMatrix{{0, 0}, {0, 1}}}};
    auto o = std::make_shared<const Order>(ring_of(basis));
    return Eichler{o, LatticeModule(o, basis.basis)};
}

bool is_unimodular_intertwiner(const IntMatrix& h, const LatticeModule& x, const LatticeModule& y)
{
    if (abs(determinant(h)) != 1) return false;
    for (std::size_t i = 0; i < x.actions().size(); ++i)
        if (h * x.action(i) != y.action(i) * h) return false;
    return true;
}

// Exhaustive search over coefficient vectors of the hom lattice in [-b, b].
bool brute_unimodular_exists(const LatticeModule& x, const LatticeModule& y, long b)
{
    HomLattice h = hom_group(x, y);
    if (x.rank() != y.rank() || h.rank() == 0) return false;
    bool found = false;
    std::vector<long> c(h.rank(), -b);
    for (;;) {
        IntMatrix m(y.rank(), x.rank());
        for (std::size_t i = 0; i < c.size(); ++i) m += h.basis[i] * Int(c[i]);
        if (abs(determinant(m)) == 1) found = true;
        std::size_t i = 0;
        while (i < c.size() && c[i] == b) c[i++] = -b;
        if (i == c.size() || found) return found;
        ++c[i];
    }
}

}  // namespace

TEST_CASE("composition_ideal examples")
{
    auto o = zsqrtm5();
    LatticeModule r = LatticeModule::regular(o);
    LatticeModule p = ideal_p(o);

    auto self = composition_ideal(r, r);
    CHECK(self.contains_identity);
    CHECK(self.index == 1);

    auto zero = composition_ideal(r, LatticeModule::zero(o));
    CHECK(zero.basis.rows() == 0);
    CHECK_FALSE(zero.contains_identity);
    CHECK(zero.index == 0);

    auto rp = composition_ideal(r, p);
    CHECK(rp.contains_identity);
    CHECK(rp.index == 1);

    auto z = z2i();
    auto cond = composition_ideal(LatticeModule::regular(z), gaussian_over_z2i(z));
    CHECK_FALSE(cond.contains_identity);
    CHECK(cond.index == 2);
}

TEST_CASE("composition ideal is two-sided")
{
    auto o = zsqrtm5();
    LatticeModule r = LatticeModule::regular(o), p = ideal_p(o);
    auto z = z2i();
    LatticeModule a = LatticeModule::regular(z), b = gaussian_over_z2i(z);
    std::vector<std::pair<LatticeModule, LatticeModule>> cases{{r, p}, {direct_sum(r, p), p}, {a, b}, {b, a}, {direct_sum(a, b), b}};
    for (const auto& [x, y] : cases) {
        auto ci = composition_ideal(x, y);
        const HomLattice& e = ci.end;
        for (std::size_t i = 0; i < ci.basis.rows(); ++i) {
            IntMatrix m = e.element(ci.basis.row(i));
            for (const auto& t : e.basis)
                for (const IntMatrix& prod : {IntMatrix(t * m), IntMatrix(m * t)}) {
                    auto c = e.coordinates(prod);
                    REQUIRE(c);
                    CHECK(solve_integer(ci.basis.transpose(), *c).has_value());
                }
        }
    }
}

TEST_CASE("retract_certificate examples")
{
    auto o = zsqrtm5();
    LatticeModule r = LatticeModule::regular(o), p = ideal_p(o);
    auto self = retract_certificate(r, r);
    REQUIRE(self);
    CHECK(self->n == 1);

    auto z = zz();
    auto one = retract_certificate(LatticeModule::free(z, 1), LatticeModule::free(z, 1));
    REQUIRE(one);
    CHECK(one->n == 1);

    auto rp = retract_certificate(r, p);
    REQUIRE(rp);
    CHECK(rp->n >= 1);
    CHECK(rp->n <= 4);
    CHECK(rp->g * rp->f == IntMatrix::identity(2));

    auto zi = z2i();
    CHECK_FALSE(retract_certificate(LatticeModule::regular(zi), gaussian_over_z2i(zi)));
    // Z[i] is not projective over Z[2i]
    CHECK_FALSE(retract_certificate(gaussian_over_z2i(zi), LatticeModule::regular(zi)));
}

TEST_CASE("retract certificate exists iff the identity is a composite")
{
    std::mt19937_64 rng(23);
    auto o = zsqrtm5();
    auto zi = z2i();
    LatticeModule r = LatticeModule::regular(o), p = ideal_p(o);
    LatticeModule a = LatticeModule::regular(zi), b = gaussian_over_z2i(zi);
    std::vector<LatticeModule> pool5{r, p, direct_sum(r, p), direct_sum(p, p)};
    std::vector<LatticeModule> pool2{a, b, direct_sum(a, b), direct_sum(b, b)};
    int positives = 0, negatives = 0;
    for (int t = 0; t < 30; ++t) {
        const auto& pool = (t % 2) ? pool5 : pool2;
        const LatticeModule& x0 = pool[rng() % pool.size()];
        const LatticeModule& y0 = pool[rng() % pool.size()];
        LatticeModule x = x0.conjugate(oracle::random_unimodular(rng, x0.rank()));
        LatticeModule y = y0.conjugate(oracle::random_unimodular(rng, y0.rank()));
        auto ci = composition_ideal(x, y);
        auto cert = retract_certificate(x, y);
        CHECK(cert.has_value() == ci.contains_identity);
        if (cert) {
            ++positives;
            CHECK(cert->g * cert->f == IntMatrix::identity(x.rank()));
            for (std::size_t k = 0; k < cert->n; ++k) {
                IntMatrix fk = cert->f.block(k * y.rank(), 0, y.rank(), x.rank());
                IntMatrix gk = cert->g.block(0, k * y.rank(), x.rank(), y.rank());
                for (std::size_t i = 0; i < x.actions().size(); ++i) {
                    CHECK(fk * x.action(i) == y.action(i) * fk);
                    CHECK(gk * y.action(i) == x.action(i) * gk);
                }
            }
        } else {
            ++negatives;
        }
    }
    CHECK(positives > 0);
    CHECK(negatives > 0);
}

TEST_CASE("iso_from_stable")
{
    auto z = zz();
    LatticeModule one = LatticeModule::free(z, 1);
    auto same = iso_from_stable(one, one);
    CHECK(same.verdict == IsoVerdict::IsoConstructed);
    REQUIRE(same.iso);
    CHECK(abs(determinant(*same.iso)) == 1);

    auto o = zsqrtm5();
    auto na = iso_from_stable(LatticeModule::regular(o), ideal_p(o));
    CHECK(na.verdict == IsoVerdict::NotApplicable);
    CHECK(na.end_rank == 2);

    Eichler e = eichler();
    CHECK(is_end_trivial(e.natural));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 5; ++t) {
        IntMatrix u = oracle::random_unimodular(rng, 2);
        LatticeModule y = e.natural.conjugate(u);
        auto res = iso_from_stable(e.natural, y);
        REQUIRE(res.verdict == IsoVerdict::IsoConstructed);
        CHECK(is_unimodular_intertwiner(*res.iso, e.natural, y));
    }
    // Z + 2Z is invariant under the Eichler order but not isomorphic to Z^2
    LatticeModule sub = e.natural.sublattice(IntMatrix{{1, 0}, {0, 2}});
    auto no = iso_from_stable(e.natural, sub);
    CHECK(no.verdict == IsoVerdict::NoIso);
    CHECK_FALSE(brute_unimodular_exists(e.natural, sub, 10));
}

TEST_CASE("stable_iso_probe")
{
    auto o = zsqrtm5();
    LatticeModule r = LatticeModule::regular(o), p = ideal_p(o);

    auto self = stable_iso_probe(r, r, 30, 1);
    CHECK(self.verdict == ProbeVerdict::IsoConstructed);
    for (const auto& c : self.primes) CHECK(c.isomorphic);

    auto mismatch = stable_iso_probe(r, direct_sum(r, r), 30, 1);
    CHECK(mismatch.verdict == ProbeVerdict::ObstructionFound);
    REQUIRE(mismatch.obstruction_prime);
    CHECK(*mismatch.obstruction_prime == 2);
    REQUIRE(mismatch.x_class);
    CHECK(*mismatch.x_class != *mismatch.y_class);

    auto rp = stable_iso_probe(r, p, 100, 1);
    CHECK(rp.verdict == ProbeVerdict::NecessaryConditionsPass);
    CHECK(rp.primes.size() >= 25);
    for (const auto& c : rp.primes) CHECK(c.isomorphic);
    REQUIRE(rp.x_retract_of_y);
    REQUIRE(rp.y_retract_of_x);
    CHECK(rp.x_retract_of_y->n <= 4);
    CHECK(rp.y_retract_of_x->n <= 4);
    CHECK(rp.min_generators_end_x == rp.min_generators_hom_xy);
    CHECK_FALSE(brute_unimodular_exists(r, p, 10));

    Eichler e = eichler();
    auto eo = stable_iso_probe(e.natural, e.natural.sublattice(IntMatrix{{1, 0}, {0, 2}}), 20, 1);
    CHECK(eo.verdict == ProbeVerdict::ObstructionFound);

    auto z = z2i();
    auto zo = stable_iso_probe(LatticeModule::regular(z), gaussian_over_z2i(z), 20, 1);
    CHECK(zo.verdict == ProbeVerdict::ObstructionFound);
}

TEST_CASE("enumerate_idempotents_conj")
{
    auto f5 = enumerate_idempotents_conj(FgRing::zmod(5));
    REQUIRE(f5.size() == 2);
    CHECK(f5[0].representative == IntVector{Int(0)});
    CHECK(f5[1].representative == IntVector{Int(1)});

    auto z6 = enumerate_idempotents_conj(FgRing::zmod(6));
    REQUIRE(z6.size() == 4);
    std::vector<long> reps;
    for (const auto& c : z6) {
        reps.push_back(c.representative[0].get_si());
        CHECK(c.size == 1);
    }
    CHECK(reps == std::vector<long>{0, 1, 3, 4});

    auto m2 = enumerate_idempotents_conj(FgRing::matrix_ring(2, 2));
    REQUIRE(m2.size() == 3);
    std::vector<std::size_t> sizes;
    for (const auto& c : m2) sizes.push_back(c.size);
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{1, 1, 6});

    try {
        enumerate_idempotents_conj(FgRing::zmod(100), 50);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooLarge);
    }
}

TEST_CASE("min_generators")
{
    CHECK(min_generators(IntMatrix(0, 3)) == 3);
    CHECK(min_generators(IntMatrix{{2, 0}, {0, 4}}) == 2);
    CHECK(min_generators(IntMatrix::identity(2)) == 0);
    CHECK(min_generators(IntMatrix{{2, 0}, {0, 3}}) == 1);

    // equals the largest dimension of M / pM over all primes
    std::mt19937_64 rng(31);
    for (int t = 0; t < 200; ++t) {
        std::size_t rows = 1 + rng() % 3, cols = 1 + rng() % 3;
        IntMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<long>(rng() % 11) - 5;
        std::size_t best = 0;
        for (auto p : primes_up_to(1000))
            best = std::max(best, cols - fp_rank(FpMatrix::reduce(m, static_cast<FpElem>(p))));
        CHECK(min_generators(m) == best);
    }
}

TEST_CASE("retract_classes_of_power")
{
    auto z = zz();
    auto free2 = retract_classes_of_power(LatticeModule::free(z, 1), 2, 20, 1);
    REQUIRE(free2.representatives.size() == 3);
    CHECK(free2.representatives[0].rank() == 0);
    CHECK(free2.representatives[1].rank() == 1);
    CHECK(free2.representatives[2].rank() == 2);
    CHECK(free2.complete);

    auto none = retract_classes_of_power(LatticeModule::free(z, 1), 0, 20, 1);
    REQUIRE(none.representatives.size() == 1);
    CHECK(none.representatives[0].rank() == 0);

    auto o = zsqrtm5();
    LatticeModule r = LatticeModule::regular(o), p = ideal_p(o);
    auto pp = retract_classes_of_power(p, 2, 20, 1);
    bool has_r = false, has_p = false;
    for (const auto& m : pp.representatives) {
        if (m.rank() != 2) continue;
        if (brute_unimodular_exists(m, r, 6)) has_r = true;
        if (brute_unimodular_exists(m, p, 6)) has_p = true;
    }
    CHECK(has_r);
    CHECK(has_p);
    for (std::size_t i = 0; i < pp.idempotents.size(); ++i) CHECK(pp.idempotents[i] * pp.idempotents[i] == pp.idempotents[i]);
}
