#ifndef K0LAT_FG_RING_HPP
#define K0LAT_FG_RING_HPP

#include <memory>
#include <optional>
#include <vector>

#include "k0lat/linalg.hpp"
#include "k0lat/zorder.hpp"

namespace k0lat {

/* Unital ring whose additive group is a product of cyclic groups Z/d_i
 * (d_i = 0 for a copy of Z), multiplication given on the generators.
 * Elements are integer coordinate vectors normalized into [0, d_i). */
class FgRing {
public:
    /* Checks that the table is compatible with the additive relations,
     * associative and unital; throws InvalidInput, NotAssociative, BadUnit. */
    FgRing(IntVector moduli, std::vector<Int> table, IntVector unit);

    static FgRing zmod(const Int& n);
    /* k x k matrices over Z/n (n = 0 for the integers), basis E_ij row-major. */
    static FgRing matrix_ring(std::size_t k, const Int& n);
    static FgRing from_order(const Order& o);

    std::size_t gens() const noexcept { return moduli_.size(); }
    const IntVector& moduli() const noexcept { return moduli_; }
    const Int& c(std::size_t i, std::size_t j, std::size_t k) const { return table_[(i * gens() + j) * gens() + k]; }
    const std::vector<Int>& table() const noexcept { return table_; }
    const IntVector& unit() const noexcept { return unit_; }

    bool is_finite() const;
    /* Number of elements; throws if infinite. */
    Int size() const;

    IntVector normalize(IntVector v) const;
    IntVector zero() const { return IntVector(gens()); }
    IntVector add(const IntVector& a, const IntVector& b) const;
    IntVector sub(const IntVector& a, const IntVector& b) const;
    IntVector multiply(const IntVector& a, const IntVector& b) const;
    bool equal(const IntVector& a, const IntVector& b) const { return normalize(a) == normalize(b); }

    /* Two-sided inverse if x is a unit. */
    std::optional<IntVector> inverse(const IntVector& x) const;
    bool is_unit(const IntVector& x) const { return inverse(x).has_value(); }

    /* Reduction R -> R/NR (same generators, moduli gcd(d_i, N)). */
    FgRing reduce_mod(const Int& n) const;

    /* Relation lattice generators d_i e_i as rows (zero rows dropped). */
    IntMatrix relations() const;

    /* All elements, for finite rings of at most `cap` elements. */
    std::vector<IntVector> elements(std::size_t cap) const;

private:
    IntVector moduli_;
    std::vector<Int> table_;
    IntVector unit_;
};

/* Additive map given by the images of the generators (columns), checked to
 * be a well-defined unital ring homomorphism. */
class RingMap {
public:
    RingMap(FgRing source, FgRing target, IntMatrix images);
    static RingMap identity(const FgRing& r);

    const FgRing& source() const noexcept { return src_; }
    const FgRing& target() const noexcept { return tgt_; }
    const IntMatrix& matrix() const noexcept { return m_; }
    IntVector apply(const IntVector& x) const;

    bool is_surjective() const;
    /* Generators of the kernel as a subgroup of coordinate space (includes
     * the source relations). */
    std::vector<IntVector> kernel() const;
    /* Some preimage of y. */
    std::optional<IntVector> preimage(const IntVector& y) const;

private:
    FgRing src_, tgt_;
    IntMatrix m_;
};

/* Projection from an order onto its quotient by the two-sided ideal spanned
 * by the given coordinate vectors; the quotient is presented in Smith
 * coordinates with trivial factors dropped.  Throws InvalidInput when the
 * span is not a two-sided ideal. */
RingMap quotient_map(const Order& o, const std::vector<IntVector>& ideal);

/* Jacobson radical of a finite ring, as generators (columns) of its preimage
 * in the coordinate lattice. */
IntMatrix finite_radical(const FgRing& a);

/* Lifts units along a surjection whose source is finite, or along a split
 * surjection with finite kernel from a finitely generated ring.  Throws
 * NotSurjective, KernelInfinite or NotSplit at construction, NotUnit in lift. */
class UnitLifter {
public:
    explicit UnitLifter(RingMap f);

    IntVector lift(const IntVector& u) const;
    /* |ker f| for the split mode, 0 for the finite mode. */
    const Int& kernel_order() const noexcept { return n_; }
    bool finite_mode() const noexcept { return finite_; }

private:
    void init_finite();
    void init_split();
    IntVector lift_finite(const IntVector& u) const;
    IntVector lift_split(const IntVector& u) const;

    RingMap f_;
    bool finite_ = true;
    Int n_ = 0;
    std::shared_ptr<const IntegerSolver> preimage_;
    // finite mode
    IntMatrix j_gens_;
    IntVector central_e_;  // lift of the identity of (ker f + J) / J
    std::shared_ptr<const IntegerSolver> radical_preimage_;
    // split mode
    std::shared_ptr<const UnitLifter> reduced_;
    IntMatrix kernel_gens_;
    std::shared_ptr<const IntegerSolver> fiber_;
};

IntVector lift_unit(const RingMap& f, const IntVector& u);

}  // namespace k0lat

#endif
