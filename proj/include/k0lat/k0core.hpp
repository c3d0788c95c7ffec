#ifndef K0LAT_K0CORE_HPP
#define K0LAT_K0CORE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "k0lat/fg_ring.hpp"
#include "k0lat/modp.hpp"
#include "k0lat/zorder.hpp"

namespace k0lat {

/* Subgroup of End(X) spanned by the composites g o f with f: X -> Y and
 * g: Y -> X.  Rows of `basis` are HNF coordinates in the end-ring basis. */
struct CompositionIdeal {
    HomLattice end;
    IntMatrix basis;
    bool contains_identity = false;
    /* [End(X) : ideal], or 0 when the ideal has smaller rank. */
    Int index;
};

CompositionIdeal composition_ideal(const HomLattice& end_x, const HomLattice& x_to_y, const HomLattice& y_to_x);
CompositionIdeal composition_ideal(const LatticeModule& x, const LatticeModule& y);

/* X as a retract of Y^n: f = (f_1; ...; f_n) stacked, g = (g_1 ... g_n)
 * side by side, with g * f = identity. */
struct RetractCertificate {
    std::size_t n = 0;
    IntMatrix f;
    IntMatrix g;
};

std::optional<RetractCertificate> retract_certificate(std::size_t rank_x, const HomLattice& x_to_y, const HomLattice& y_to_x);
std::optional<RetractCertificate> retract_certificate(const LatticeModule& x, const LatticeModule& y);

enum class IsoVerdict { IsoConstructed, NotApplicable, NoIso };
std::string_view to_string(IsoVerdict v);

struct IsoFromStable {
    IsoVerdict verdict = IsoVerdict::NotApplicable;
    std::optional<IntMatrix> iso;  // X -> Y, unimodular and intertwining
    std::string reason;
    std::size_t end_rank = 0;
};

/* Isomorphism from mutual retracts when End(X) = Z: Hom(X, Y) must then be
 * cyclic, and X = Y exactly when its generator is unimodular. */
IsoFromStable iso_from_stable(std::size_t rank_x, std::size_t rank_y, const HomLattice& end_x, const HomLattice& x_to_y,
                              const HomLattice& y_to_x);
IsoFromStable iso_from_stable(const LatticeModule& x, const LatticeModule& y);

/* Element of the hom lattice with |det| = 1 among coefficient vectors in
 * [-bound, bound]; the bound is lowered so at most `budget` vectors are tried. */
std::optional<IntMatrix> search_unimodular(const HomLattice& h, long bound, std::size_t budget = 2000000);

enum class ProbeVerdict { IsoConstructed, ObstructionFound, NecessaryConditionsPass };
std::string_view to_string(ProbeVerdict v);

struct PrimeCheck {
    std::uint64_t p = 0;
    bool isomorphic = false;
};

struct StableIsoReport {
    std::vector<PrimeCheck> primes;
    std::vector<std::uint64_t> skipped_primes;  // above the F_p word size
    std::optional<RetractCertificate> x_retract_of_y;
    std::optional<RetractCertificate> y_retract_of_x;
    std::size_t min_generators_end_x = 0;
    std::size_t min_generators_hom_xy = 0;
    std::size_t min_generators_end_y = 0;
    std::size_t min_generators_hom_yx = 0;
    ProbeVerdict verdict = ProbeVerdict::NecessaryConditionsPass;
    std::optional<std::uint64_t> obstruction_prime;
    std::optional<K0ClassFp> x_class, y_class;  // the differing classes at the obstruction prime
    std::string obstruction;
    std::optional<IntMatrix> iso;
};

/* Primes examined by the probe: all primes up to the bound and the prime
 * divisors of trace-form and cross-pairing Gram invariants and of the
 * composition-ideal indices. */
std::vector<Int> probe_primes(const LatticeModule& x, const LatticeModule& y, std::uint64_t prime_bound);

StableIsoReport stable_iso_probe(const LatticeModule& x, const LatticeModule& y, std::uint64_t prime_bound, std::uint64_t seed);

struct IdempotentClass {
    IntVector representative;  // lexicographically least member
    std::size_t size = 0;
};

/* Conjugacy classes of idempotents of a finite ring under its unit group,
 * sorted by representative. */
std::vector<IdempotentClass> enumerate_idempotents_conj(const FgRing& a, std::size_t cutoff = 1000000);

/* Minimal number of generators of Z^cols / (row span of relations). */
std::size_t min_generators(const IntMatrix& relations);
std::size_t min_generators(const HomLattice& h);

struct RetractClasses {
    std::vector<LatticeModule> representatives;
    std::vector<IntMatrix> idempotents;  // in Y^n coordinates, one per representative
    std::size_t classes_mod_2 = 0;
    std::size_t unlifted = 0;  // classes mod 2 with no integral idempotent found
    bool complete = false;     // true only when every class lifted and all pairs were separated
};

struct RetractSearch {
    long coefficient_bound = 3;
    int hensel_steps = 4;
    long iso_search_bound = 10;
    std::size_t end_rank_cap = 18;
};

/* Retracts of Y^n obtained from integral idempotents of End(Y^n) that lift
 * conjugacy classes of idempotents of End(Y^n)/2; isomorphic images are
 * merged by explicit unimodular intertwiners. */
RetractClasses retract_classes_of_power(const LatticeModule& y, std::size_t n, std::uint64_t prime_bound, std::uint64_t seed,
                                        const RetractSearch& cfg = {});

}  // namespace k0lat

#endif
