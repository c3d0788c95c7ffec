#ifndef K0LAT_ZORDER_HPP
#define K0LAT_ZORDER_HPP

#include <memory>
#include <optional>
#include <vector>

#include "k0lat/fp_algebra.hpp"
#include "k0lat/linalg.hpp"

namespace k0lat {

/* A ring that is free of finite rank over the integers: b_i b_j =
 * sum_k c(i,j,k) b_k, with the unit given in coordinates. */
class Order {
public:
    /* table is indexed (i*n + j)*n + k.  Throws NotAssociative or BadUnit
     * naming a witness. */
    Order(std::size_t rank, std::vector<Int> table, IntVector unit);

    static Order integers();
    /* Z[x]/(x^2 - a x - b) on the basis 1, x. */
    static Order quadratic(long a, long b);

    std::size_t rank() const noexcept { return n_; }
    const Int& c(std::size_t i, std::size_t j, std::size_t k) const { return table_[(i * n_ + j) * n_ + k]; }
    const std::vector<Int>& table() const noexcept { return table_; }
    const IntVector& unit() const noexcept { return unit_; }

    IntVector multiply(const IntVector& a, const IntVector& b) const;
    /* Column j is a*b_j. */
    IntMatrix left_mult(const IntVector& a) const;
    /* Column j is b_j*a. */
    IntMatrix right_mult(const IntVector& a) const;

    FpAlgebra reduce_mod(FpElem p) const;

    friend bool operator==(const Order& a, const Order& b)
    {
        return a.n_ == b.n_ && a.table_ == b.table_ && a.unit_ == b.unit_;
    }

private:
    std::size_t n_;
    std::vector<Int> table_;
    IntVector unit_;
};

Order validate_order(std::size_t rank, const std::vector<Int>& table, const IntVector& unit);

/* Free Z-lattice with a left action of an Order; action(i) is the matrix of
 * the i-th basis element of the order acting on column vectors. */
class LatticeModule {
public:
    LatticeModule(std::shared_ptr<const Order> order, std::vector<IntMatrix> actions);

    static LatticeModule zero(std::shared_ptr<const Order> order);
    /* Free module Z^m over the integers (order must have rank 1). */
    static LatticeModule free(std::shared_ptr<const Order> order, std::size_t m);
    static LatticeModule regular(std::shared_ptr<const Order> order);

    const Order& order() const noexcept { return *order_; }
    const std::shared_ptr<const Order>& order_ptr() const noexcept { return order_; }
    std::size_t rank() const noexcept { return rank_; }
    const IntMatrix& action(std::size_t i) const { return actions_[i]; }
    const std::vector<IntMatrix>& actions() const noexcept { return actions_; }

    /* The image module under the unimodular change of basis u: actions
     * u rho u^-1, so that u itself is an isomorphism from this module. */
    LatticeModule conjugate(const IntMatrix& u) const;
    /* The invariant full-rank or partial sublattice spanned by the columns
     * of s, in the basis s; throws InvalidInput if not invariant. */
    LatticeModule sublattice(const IntMatrix& s) const;

private:
    struct Unchecked {};
    LatticeModule(std::shared_ptr<const Order> order, std::vector<IntMatrix> actions, std::size_t rank, Unchecked);

    std::shared_ptr<const Order> order_;
    std::size_t rank_;
    std::vector<IntMatrix> actions_;
};

bool same_order(const LatticeModule& x, const LatticeModule& y);

/* Integer intertwiners target_rank x source_rank, HNF-canonical basis. */
struct HomLattice {
    std::size_t source_rank = 0;
    std::size_t target_rank = 0;
    std::vector<IntMatrix> basis;

    std::size_t rank() const noexcept { return basis.size(); }
    IntMatrix element(const IntVector& coeffs) const;
    /* Coordinates of phi in the basis, if phi is in the integer span. */
    std::optional<IntVector> coordinates(const IntMatrix& phi) const;
};

/* Saturated integer solutions of phi * a_i = b_i * phi for paired operator
 * lists; shared by modules and Hodge objects. */
HomLattice intertwiners(std::size_t source_rank, std::size_t target_rank, const std::vector<IntMatrix>& source_ops,
                        const std::vector<IntMatrix>& target_ops);

HomLattice hom_group(const LatticeModule& x, const LatticeModule& y);

struct EndRing {
    Order order;
    HomLattice hom;  // basis element i corresponds to order basis element i
};

/* Structure constants of the ring spanned by a Hom lattice of endomorphisms:
 * the product is matrix composition. */
Order ring_of(const HomLattice& end);
EndRing end_ring(const LatticeModule& x);
bool is_end_trivial(const HomLattice& end);
bool is_end_trivial(const LatticeModule& x);

LatticeModule direct_sum(const LatticeModule& x, const LatticeModule& y);
LatticeModule power(const LatticeModule& x, std::size_t n);

FpModule tensor_fp(const LatticeModule& x, FpElem p);

}  // namespace k0lat

#endif
