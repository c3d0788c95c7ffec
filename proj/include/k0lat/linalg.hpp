#ifndef K0LAT_LINALG_HPP
#define K0LAT_LINALG_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "k0lat/error.hpp"

namespace k0lat {

using Int = mpz_class;
using Rat = mpq_class;
using IntVector = std::vector<Int>;
using RatVector = std::vector<Rat>;

/* Dense row-major matrix over an exact ring (mpz_class or mpq_class). */
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<long>> init);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix from_columns(std::size_t rows, const std::vector<std::vector<T>>& cols);
    static Matrix from_rows(std::size_t cols, const std::vector<std::vector<T>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const;
    std::vector<T> column(std::size_t j) const;
    const std::vector<T>& data() const noexcept { return data_; }

    Matrix transpose() const;
    bool is_zero() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const T& s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
    friend Matrix operator-(Matrix a) { return a *= T(-1); }
    friend Matrix operator*(const Matrix& a, const Matrix& b) { return multiply(a, b); }
    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator<(const Matrix& a, const Matrix& b)
    {
        if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
        if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
        return a.data_ < b.data_;
    }

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    /* row_i += s * row_j */
    void add_row_multiple(std::size_t i, std::size_t j, const T& s);
    void add_col_multiple(std::size_t i, std::size_t j, const T& s);
    void negate_row(std::size_t i);

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

private:
    static Matrix multiply(const Matrix& a, const Matrix& b);

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

IntVector operator*(const IntMatrix& a, const IntVector& x);
RatVector operator*(const RatMatrix& a, const RatVector& x);

RatMatrix to_rational(const IntMatrix& m);
/* Throws InvalidInput if some entry is not an integer. */
IntMatrix to_integer(const RatMatrix& m);
bool is_integral(const RatMatrix& m);

IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks);
RatMatrix block_diagonal(const std::vector<RatMatrix>& blocks);
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);

/* Row-major flattening helpers for treating matrices as lattice vectors. */
IntVector flatten(const IntMatrix& m);
IntMatrix unflatten(const IntVector& v, std::size_t rows, std::size_t cols);

Int determinant(const IntMatrix& m);
Rat determinant(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);
std::optional<RatMatrix> inverse(const RatMatrix& m);
Int trace(const IntMatrix& m);
Int gcd_of(const IntVector& v);

struct HnfResult {
    IntMatrix h;  // row Hermite normal form
    IntMatrix u;  // unimodular, u * m == h
    std::size_t rank = 0;
};

/* Row Hermite normal form: pivots positive, entries above each pivot reduced
 * into [0, pivot), zero rows last. */
HnfResult hnf(const IntMatrix& m);

/* Nonzero rows of the HNF of the lattice spanned by the given rows. */
IntMatrix hnf_rows(const IntMatrix& m);

struct SnfResult {
    IntMatrix s;  // diagonal, d_1 | d_2 | ..., d_i >= 0
    IntMatrix u;  // unimodular
    IntMatrix v;  // unimodular, u * m * v == s
    std::size_t rank = 0;
    IntVector invariant_factors() const;  // the nonzero diagonal entries
};

SnfResult snf(const IntMatrix& m);

/* Integer solutions of A x = b.  Precomputes the Smith form once so repeated
 * right-hand sides are cheap. */
class IntegerSolver {
public:
    explicit IntegerSolver(const IntMatrix& a);

    std::optional<IntVector> solve(const IntVector& b) const;
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    SnfResult snf_;
};

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

/* Saturated basis of {x in Z^cols : A x = 0}, HNF-reduced, as columns. */
std::vector<IntVector> kernel_basis(const IntMatrix& a);

/* Intersection of the lattices spanned by the columns of a and b (same
 * ambient dimension); returns HNF-reduced generators as columns of a matrix. */
IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b);

IntMatrix unimodular_inverse(const IntMatrix& u);

/* ---- prime fields ---- */

using FpElem = std::uint32_t;

bool is_prime(std::uint64_t n);
bool is_probable_prime(const Int& n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);
/* Prime divisors found by trial division (complete for |n| < 10^12, larger
 * cofactors are tested for primality and reported as-is when prime). */
std::vector<Int> prime_divisors(const Int& n);

FpElem fp_inv(FpElem a, FpElem p);
FpElem fp_pow(FpElem a, std::uint64_t e, FpElem p);

class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(FpElem p, std::size_t rows, std::size_t cols)
        : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static FpMatrix identity(FpElem p, std::size_t n);
    static FpMatrix reduce(const IntMatrix& m, FpElem p);
    static FpMatrix from_columns(FpElem p, std::size_t rows, const std::vector<std::vector<FpElem>>& cols);

    FpElem prime() const noexcept { return p_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    FpElem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    FpElem operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<FpElem>& data() const noexcept { return data_; }

    std::vector<FpElem> column(std::size_t j) const;
    FpMatrix transpose() const;
    bool is_zero() const;
    FpElem trace() const;

    FpMatrix& operator+=(const FpMatrix& o);
    FpMatrix& operator-=(const FpMatrix& o);
    FpMatrix& scale(FpElem s);
    friend FpMatrix operator+(FpMatrix a, const FpMatrix& b) { return a += b; }
    friend FpMatrix operator-(FpMatrix a, const FpMatrix& b) { return a -= b; }
    friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
    friend std::vector<FpElem> operator*(const FpMatrix& a, const std::vector<FpElem>& x);
    friend bool operator==(const FpMatrix& a, const FpMatrix& b)
    {
        return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator<(const FpMatrix& a, const FpMatrix& b)
    {
        if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
        if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
        return a.data_ < b.data_;
    }

    FpMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const FpMatrix& b);

    IntMatrix lift() const;  // entries in [0, p)

private:
    FpElem p_ = 2;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<FpElem> data_;
};

FpMatrix fp_power(const FpMatrix& a, std::uint64_t e);

struct FpEchelon {
    FpMatrix r;                     // reduced row echelon form
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

FpEchelon fp_rref(const FpMatrix& a);
std::size_t fp_rank(const FpMatrix& a);
FpElem fp_determinant(const FpMatrix& a);
std::optional<FpMatrix> fp_inverse(const FpMatrix& a);

/* Basis of {x : A x = 0} over F_p; vectors are in RREF-derived standard form. */
std::vector<std::vector<FpElem>> fp_nullspace(const FpMatrix& a);

/* Solve A X = B for X when a solution exists. */
std::optional<FpMatrix> fp_solve(const FpMatrix& a, const FpMatrix& b);

/* Incremental row-echelon basis of a subspace of F_p^n, used to grow spans and
 * to solve many small membership problems. */
class FpSubspace {
public:
    FpSubspace(FpElem p, std::size_t ambient) : p_(p), n_(ambient) {}

    /* Reduces v against the basis; returns true if it enlarged the span. */
    bool insert(std::vector<FpElem> v);
    bool contains(std::vector<FpElem> v) const;
    std::vector<FpElem> reduce(std::vector<FpElem> v) const;

    std::size_t dim() const noexcept { return rows_.size(); }
    std::size_t ambient() const noexcept { return n_; }
    FpElem prime() const noexcept { return p_; }
    /* Basis in fully reduced echelon form, sorted by pivot. */
    std::vector<std::vector<FpElem>> basis() const;
    /* Columns of F_p^n not carrying a pivot; they span a complement. */
    std::vector<std::size_t> free_columns() const;
    /* Basis of the vectors x with <row, x> = 0 for every row of the span,
     * i.e. the solution space when the rows are equations. */
    std::vector<std::vector<FpElem>> nullspace() const;

private:
    FpElem p_;
    std::size_t n_;
    std::vector<std::vector<FpElem>> rows_;
    std::vector<std::size_t> pivots_;
};

std::string to_string(const Int& v);

}  // namespace k0lat

#endif
