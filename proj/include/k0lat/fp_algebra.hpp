#ifndef K0LAT_FP_ALGEBRA_HPP
#define K0LAT_FP_ALGEBRA_HPP

#include <memory>
#include <vector>

#include "k0lat/linalg.hpp"

namespace k0lat {

using FpVector = std::vector<FpElem>;

/* Finite-dimensional associative unital algebra over F_p given by structure
 * constants: b_i * b_j = sum_k c(i,j,k) b_k. */
class FpAlgebra {
public:
    /* Validates primality, associativity and the unit; throws NotPrime,
     * NotAssociative or BadUnit. */
    FpAlgebra(FpElem p, std::size_t dim, std::vector<FpElem> table, FpVector unit);

    /* The algebra spanned by the given matrices, which must contain the
     * identity and be closed under products; basis is the given list. */
    static FpAlgebra from_matrices(const std::vector<FpMatrix>& basis);
    /* No validation; for tables computed from matrix algebras. */
    static FpAlgebra trusted(FpElem p, std::size_t dim, std::vector<FpElem> table, FpVector unit);

    FpElem prime() const noexcept { return p_; }
    std::size_t dim() const noexcept { return dim_; }
    FpElem c(std::size_t i, std::size_t j, std::size_t k) const { return table_[(i * dim_ + j) * dim_ + k]; }
    const std::vector<FpElem>& table() const noexcept { return table_; }
    const FpVector& unit() const noexcept { return unit_; }

    FpVector multiply(const FpVector& a, const FpVector& b) const;
    /* Matrix of x -> a*x in the basis (column j is a*b_j). */
    FpMatrix left_mult(const FpVector& a) const;
    /* Left regular representation of each basis element. */
    std::vector<FpMatrix> regular_actions() const;

    friend bool operator==(const FpAlgebra& a, const FpAlgebra& b)
    {
        return a.p_ == b.p_ && a.dim_ == b.dim_ && a.table_ == b.table_ && a.unit_ == b.unit_;
    }

private:
    FpAlgebra() = default;

    FpElem p_ = 2;
    std::size_t dim_ = 0;
    std::vector<FpElem> table_;
    FpVector unit_;
};

/* Left module over an FpAlgebra given by one action matrix per basis element. */
class FpModule {
public:
    /* Validates that the actions respect the table and the unit. */
    FpModule(std::shared_ptr<const FpAlgebra> alg, std::vector<FpMatrix> actions);
    /* Rank-0 module. */
    static FpModule zero(std::shared_ptr<const FpAlgebra> alg);
    static FpModule regular(std::shared_ptr<const FpAlgebra> alg);

    const FpAlgebra& algebra() const noexcept { return *alg_; }
    const std::shared_ptr<const FpAlgebra>& algebra_ptr() const noexcept { return alg_; }
    FpElem prime() const noexcept { return alg_->prime(); }
    std::size_t dim() const noexcept { return dim_; }
    const FpMatrix& action(std::size_t i) const { return actions_[i]; }
    const std::vector<FpMatrix>& actions() const noexcept { return actions_; }

    /* The same module in the basis given by the columns of P (invertible):
     * new actions P^-1 rho P. */
    FpModule change_basis(const FpMatrix& p) const;
    /* Restriction to an invariant subspace with the given basis (columns). */
    FpModule restrict_to(const std::vector<FpVector>& basis) const;

private:
    struct Unchecked {};
    FpModule(std::shared_ptr<const FpAlgebra> alg, std::vector<FpMatrix> actions, std::size_t dim, Unchecked);

    std::shared_ptr<const FpAlgebra> alg_;
    std::size_t dim_;
    std::vector<FpMatrix> actions_;
};

FpModule direct_sum(const FpModule& a, const FpModule& b);

bool same_algebra(const FpAlgebra& a, const FpAlgebra& b);

/* Indices of basis elements that generate the algebra (with the unit). */
std::vector<std::size_t> algebra_generators(const FpAlgebra& a);

/* Basis of Hom_A(M, N) as dim N x dim M matrices. */
std::vector<FpMatrix> hom_space(const FpModule& m, const FpModule& n);

/* The span of the given matrices, closed under products, as an algebra of
 * n x n matrices (the identity is expected to be in the span). */
struct MatrixAlgebra {
    FpElem p = 2;
    std::size_t n = 0;
    std::vector<FpMatrix> basis;
};

MatrixAlgebra end_algebra(const FpModule& m);

/* Jacobson radical of a subalgebra of M_n(F_p), as matrices spanning it. */
std::vector<FpMatrix> radical(const MatrixAlgebra& a);

/* Jacobson radical of an abstract algebra as coordinate vectors. */
std::vector<FpVector> radical(const FpAlgebra& a);

/* True iff A/J(A) is a division algebra (hence a field). */
bool is_local(const MatrixAlgebra& a, const std::vector<FpMatrix>& rad);

}  // namespace k0lat

#endif
