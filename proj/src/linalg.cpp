#include "k0lat/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace k0lat {

// ---------------------------------------------------------------- Matrix<T>

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> init)
{
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
        if (r.size() != cols_)
            throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
        for (long v : r) data_.emplace_back(v);
    }
}

template <class T>
Matrix<T> Matrix<T>::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

template <class T>
Matrix<T> Matrix<T>::from_columns(std::size_t rows, const std::vector<std::vector<T>>& cols)
{
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows)
            throw Error(ErrorKind::DimensionMismatch, "column length");
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

template <class T>
Matrix<T> Matrix<T>::from_rows(std::size_t cols, const std::vector<std::vector<T>>& rows)
{
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw Error(ErrorKind::DimensionMismatch, "row length");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

template <class T>
std::vector<T> Matrix<T>::row(std::size_t i) const
{
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

template <class T>
std::vector<T> Matrix<T>::column(std::size_t j) const
{
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

template <class T>
Matrix<T> Matrix<T>::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

template <class T>
bool Matrix<T>::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const T& v) { return v == 0; });
}

template <class T>
Matrix<T>& Matrix<T>::operator+=(const Matrix& o)
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error(ErrorKind::DimensionMismatch, "matrix addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

template <class T>
Matrix<T>& Matrix<T>::operator-=(const Matrix& o)
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error(ErrorKind::DimensionMismatch, "matrix subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

template <class T>
Matrix<T>& Matrix<T>::operator*=(const T& s)
{
    for (auto& v : data_) v *= s;
    return *this;
}

template <class T>
Matrix<T> Matrix<T>::multiply(const Matrix& a, const Matrix& b)
{
    if (a.cols_ != b.rows_)
        throw Error(ErrorKind::DimensionMismatch, "matrix product");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const T& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

template <class T>
void Matrix<T>::swap_rows(std::size_t i, std::size_t j)
{
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

template <class T>
void Matrix<T>::swap_cols(std::size_t i, std::size_t j)
{
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

template <class T>
void Matrix<T>::add_row_multiple(std::size_t i, std::size_t j, const T& s)
{
    if (s == 0) return;
    for (std::size_t c = 0; c < cols_; ++c)
        if ((*this)(j, c) != 0) (*this)(i, c) += s * (*this)(j, c);
}

template <class T>
void Matrix<T>::add_col_multiple(std::size_t i, std::size_t j, const T& s)
{
    if (s == 0) return;
    for (std::size_t r = 0; r < rows_; ++r)
        if ((*this)(r, j) != 0) (*this)(r, i) += s * (*this)(r, j);
}

template <class T>
void Matrix<T>::negate_row(std::size_t i)
{
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}

template <class T>
Matrix<T> Matrix<T>::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

template <class T>
void Matrix<T>::set_block(std::size_t r0, std::size_t c0, const Matrix& b)
{
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

template class Matrix<Int>;
template class Matrix<Rat>;

// ---------------------------------------------------------------- helpers

IntVector operator*(const IntMatrix& a, const IntVector& x)
{
    if (a.cols() != x.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
    IntVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

RatVector operator*(const RatMatrix& a, const RatVector& x)
{
    if (a.cols() != x.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
    RatVector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

bool is_integral(const RatMatrix& m)
{
    return std::all_of(m.data().begin(), m.data().end(), [](const Rat& v) { return v.get_den() == 1; });
}

IntMatrix to_integer(const RatMatrix& m)
{
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m(i, j).get_den() != 1) throw Error(ErrorKind::InvalidInput, "matrix entry is not an integer");
            r(i, j) = m(i, j).get_num();
        }
    return r;
}

template <class T>
static Matrix<T> block_diag_impl(const std::vector<Matrix<T>>& blocks)
{
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Matrix<T> m(r, c);
    r = c = 0;
    for (const auto& b : blocks) {
        m.set_block(r, c, b);
        r += b.rows();
        c += b.cols();
    }
    return m;
}

IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks) { return block_diag_impl(blocks); }
RatMatrix block_diagonal(const std::vector<RatMatrix>& blocks) { return block_diag_impl(blocks); }

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "hstack");
    IntMatrix m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "vstack");
    IntMatrix m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

IntVector flatten(const IntMatrix& m) { return m.data(); }

IntMatrix unflatten(const IntVector& v, std::size_t rows, std::size_t cols)
{
    if (v.size() != rows * cols) throw Error(ErrorKind::DimensionMismatch, "unflatten");
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
    return m;
}

// Bareiss fraction-free elimination.
Int determinant(const IntMatrix& m)
{
    if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && a(r, k) == 0) ++r;
            if (r == n) return 0;
            a.swap_rows(k, r);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                a(i, j) = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

Rat determinant(const RatMatrix& m)
{
    if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
    RatMatrix a = m;
    const std::size_t n = a.rows();
    Rat det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t r = k;
        while (r < n && a(r, k) == 0) ++r;
        if (r == n) return 0;
        if (r != k) {
            a.swap_rows(k, r);
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rat f = a(i, k) / a(k, k);
            a.add_row_multiple(i, k, -f);
        }
    }
    return det;
}

std::optional<RatMatrix> inverse(const RatMatrix& m)
{
    if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
    const std::size_t n = m.rows();
    RatMatrix a = m, inv = RatMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t r = k;
        while (r < n && a(r, k) == 0) ++r;
        if (r == n) return std::nullopt;
        a.swap_rows(k, r);
        inv.swap_rows(k, r);
        Rat f = 1 / a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) *= f;
            inv(k, j) *= f;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a(i, k) == 0) continue;
            Rat g = -a(i, k);
            a.add_row_multiple(i, k, g);
            inv.add_row_multiple(i, k, g);
        }
    }
    return inv;
}

std::size_t rank(const IntMatrix& m) { return hnf_rows(m).rows(); }

Int trace(const IntMatrix& m)
{
    Int t = 0;
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
    return t;
}

Int gcd_of(const IntVector& v)
{
    Int g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

// ---------------------------------------------------------------- HNF / SNF

HnfResult hnf(const IntMatrix& m)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    HnfResult res{m, IntMatrix::identity(rows), 0};
    IntMatrix& h = res.h;
    IntMatrix& u = res.u;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        for (;;) {
            // minimal absolute value pivot keeps entry growth down
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (h(i, c) != 0 && (best == rows || abs(h(i, c)) < abs(h(best, c)))) best = i;
            if (best == rows) break;
            h.swap_rows(r, best);
            u.swap_rows(r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (h(i, c) == 0) continue;
                Int q = h(i, c) / h(r, c);
                h.add_row_multiple(i, r, -q);
                u.add_row_multiple(i, r, -q);
                if (h(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h(r, c) == 0) continue;
        if (h(r, c) < 0) {
            h.negate_row(r);
            u.negate_row(r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
            h.add_row_multiple(i, r, -q);
            u.add_row_multiple(i, r, -q);
        }
        ++r;
    }
    res.rank = r;
    return res;
}

IntMatrix hnf_rows(const IntMatrix& m)
{
    // transform-free variant of hnf()
    IntMatrix h = m;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        for (;;) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (h(i, c) != 0 && (best == rows || abs(h(i, c)) < abs(h(best, c)))) best = i;
            if (best == rows) break;
            h.swap_rows(r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (h(i, c) == 0) continue;
                Int q = h(i, c) / h(r, c);
                h.add_row_multiple(i, r, -q);
                if (h(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h(r, c) == 0) continue;
        if (h(r, c) < 0) h.negate_row(r);
        for (std::size_t i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
            h.add_row_multiple(i, r, -q);
        }
        ++r;
    }
    return h.block(0, 0, r, cols);
}

IntVector SnfResult::invariant_factors() const
{
    IntVector d;
    for (std::size_t i = 0; i < rank; ++i) d.push_back(s(i, i));
    return d;
}

SnfResult snf(const IntMatrix& m)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    SnfResult res{m, IntMatrix::identity(rows), IntMatrix::identity(cols), 0};
    IntMatrix& s = res.s;
    IntMatrix& u = res.u;
    IntMatrix& v = res.v;
    const std::size_t lim = std::min(rows, cols);
    std::size_t t = 0;
    for (; t < lim; ++t) {
        bool found_any = false;
        for (;;) {
            std::size_t bi = rows, bj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (s(i, j) != 0 && (bi == rows || abs(s(i, j)) < abs(s(bi, bj)))) {
                        bi = i;
                        bj = j;
                    }
            if (bi == rows) break;
            found_any = true;
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            s.swap_cols(t, bj);
            v.swap_cols(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (s(i, t) == 0) continue;
                Int q = s(i, t) / s(t, t);
                s.add_row_multiple(i, t, -q);
                u.add_row_multiple(i, t, -q);
                if (s(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (s(t, j) == 0) continue;
                Int q = s(t, j) / s(t, t);
                s.add_col_multiple(j, t, -q);
                v.add_col_multiple(j, t, -q);
                if (s(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // enforce the divisor chain
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            s.add_row_multiple(t, bad, 1);
            u.add_row_multiple(t, bad, 1);
        }
        if (!found_any) break;
        if (s(t, t) < 0) {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    res.rank = t;
    return res;
}

IntegerSolver::IntegerSolver(const IntMatrix& a) : rows_(a.rows()), cols_(a.cols()), snf_(snf(a)) {}

std::optional<IntVector> IntegerSolver::solve(const IntVector& b) const
{
    if (b.size() != rows_) throw Error(ErrorKind::DimensionMismatch, "right-hand side length");
    IntVector c = snf_.u * b;
    IntVector y(cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i < snf_.rank) {
            const Int& d = snf_.s(i, i);
            if (!mpz_divisible_p(c[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
            mpz_divexact(y[i].get_mpz_t(), c[i].get_mpz_t(), d.get_mpz_t());
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return snf_.v * y;
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b)
{
    if (b.size() != a.rows()) throw Error(ErrorKind::DimensionMismatch, "right-hand side length");
    return IntegerSolver(a).solve(b);
}

std::vector<IntVector> kernel_basis(const IntMatrix& a)
{
    const std::size_t n = a.cols();
    HnfResult h = hnf(a.transpose());
    if (h.rank == n) return {};
    IntMatrix k = h.u.block(h.rank, 0, n - h.rank, n);
    IntMatrix red = hnf_rows(k);
    std::vector<IntVector> out;
    out.reserve(red.rows());
    for (std::size_t i = 0; i < red.rows(); ++i) out.push_back(red.row(i));
    return out;
}

IntMatrix lattice_intersection(const IntMatrix& a, const IntMatrix& b)
{
    if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "lattice intersection");
    IntMatrix sys = hstack(a, -b);
    std::vector<IntVector> ker = kernel_basis(sys);
    IntMatrix gens(ker.size(), a.rows());
    for (std::size_t k = 0; k < ker.size(); ++k) {
        IntVector s(ker[k].begin(), ker[k].begin() + a.cols());
        IntVector x = a * s;
        for (std::size_t i = 0; i < x.size(); ++i) gens(k, i) = x[i];
    }
    return hnf_rows(gens).transpose();
}

IntMatrix unimodular_inverse(const IntMatrix& u)
{
    HnfResult h = hnf(u);
    if (h.h != IntMatrix::identity(u.rows()))
        throw Error(ErrorKind::InvalidInput, "matrix is not unimodular");
    return h.u;
}

// ---------------------------------------------------------------- primes

bool is_prime(std::uint64_t n)
{
    if (n < 2) return false;
    Int z;
    mpz_set_ui(z.get_mpz_t(), static_cast<unsigned long>(n));
    return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

bool is_probable_prime(const Int& n) { return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound)
{
    std::vector<std::uint64_t> out;
    if (bound < 2) return out;
    std::vector<bool> comp(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= bound; j += i) comp[j] = true;
    }
    return out;
}

static Int pollard_rho(const Int& n)
{
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        auto f = [&](const Int& v) {
            Int r = v * v + c;
            mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
            return r;
        };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            Int diff = abs(x - y);
            d = gcd(diff, n);
        }
        if (d != n) return d;
    }
}

static void factor_into(const Int& n, std::vector<Int>& out)
{
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out.push_back(n);
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

std::vector<Int> prime_divisors(const Int& value)
{
    Int n = abs(value);
    std::vector<Int> out;
    if (n == 0) return out;
    for (unsigned long p = 2; p < 1000000 && Int(p) * p <= n; ++p) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out.emplace_back(p);
            while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
        }
    }
    if (n > 1) factor_into(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------- F_p

static inline FpElem mulmod(FpElem a, FpElem b, FpElem p)
{
    return static_cast<FpElem>((static_cast<std::uint64_t>(a) * b) % p);
}

FpElem fp_pow(FpElem a, std::uint64_t e, FpElem p)
{
    std::uint64_t r = 1 % p, b = a % p;
    while (e) {
        if (e & 1) r = (r * b) % p;
        b = (b * b) % p;
        e >>= 1;
    }
    return static_cast<FpElem>(r);
}

FpElem fp_inv(FpElem a, FpElem p)
{
    if (a % p == 0) throw Error(ErrorKind::NotUnit, "zero has no inverse mod p");
    return fp_pow(a, p - 2, p);
}

FpMatrix FpMatrix::identity(FpElem p, std::size_t n)
{
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % p;
    return m;
}

FpMatrix FpMatrix::reduce(const IntMatrix& m, FpElem p)
{
    FpMatrix r(p, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = static_cast<FpElem>(mpz_fdiv_ui(m(i, j).get_mpz_t(), p));
    return r;
}

FpMatrix FpMatrix::from_columns(FpElem p, std::size_t rows, const std::vector<std::vector<FpElem>>& cols)
{
    FpMatrix m(p, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
}

std::vector<FpElem> FpMatrix::column(std::size_t j) const
{
    std::vector<FpElem> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

FpMatrix FpMatrix::transpose() const
{
    FpMatrix t(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool FpMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](FpElem v) { return v == 0; });
}

FpElem FpMatrix::trace() const
{
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return static_cast<FpElem>(t % p_);
}

FpMatrix& FpMatrix::operator+=(const FpMatrix& o)
{
    if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_)
        throw Error(ErrorKind::DimensionMismatch, "F_p matrix addition");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        std::uint64_t s = static_cast<std::uint64_t>(data_[i]) + o.data_[i];
        data_[i] = static_cast<FpElem>(s >= p_ ? s - p_ : s);
    }
    return *this;
}

FpMatrix& FpMatrix::operator-=(const FpMatrix& o)
{
    if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_)
        throw Error(ErrorKind::DimensionMismatch, "F_p matrix subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        std::uint64_t s = static_cast<std::uint64_t>(data_[i]) + p_ - o.data_[i];
        data_[i] = static_cast<FpElem>(s >= p_ ? s - p_ : s);
    }
    return *this;
}

FpMatrix& FpMatrix::scale(FpElem s)
{
    for (auto& v : data_) v = mulmod(v, s % p_, p_);
    return *this;
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b)
{
    if (a.cols_ != b.rows_ || a.p_ != b.p_) throw Error(ErrorKind::DimensionMismatch, "F_p matrix product");
    const FpElem p = a.p_;
    FpMatrix c(p, a.rows_, b.cols_);
    std::vector<std::uint64_t> acc(b.cols_);
    const bool small = p < 65536;
    for (std::size_t i = 0; i < a.rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t k = 0; k < a.cols_; ++k) {
            std::uint64_t aik = a(i, k);
            if (!aik) continue;
            const FpElem* brow = &b.data_[k * b.cols_];
            if (small) {
                for (std::size_t j = 0; j < b.cols_; ++j) acc[j] += aik * brow[j];
            } else {
                for (std::size_t j = 0; j < b.cols_; ++j) acc[j] = (acc[j] + aik * brow[j]) % p;
            }
        }
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = static_cast<FpElem>(acc[j] % p);
    }
    return c;
}

std::vector<FpElem> operator*(const FpMatrix& a, const std::vector<FpElem>& x)
{
    if (a.cols_ != x.size()) throw Error(ErrorKind::DimensionMismatch, "F_p matrix-vector product");
    std::vector<FpElem> y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        std::uint64_t s = 0;
        for (std::size_t j = 0; j < a.cols_; ++j) s = (s + static_cast<std::uint64_t>(a(i, j)) * x[j]) % a.p_;
        y[i] = static_cast<FpElem>(s);
    }
    return y;
}

FpMatrix FpMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
{
    FpMatrix b(p_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void FpMatrix::set_block(std::size_t r0, std::size_t c0, const FpMatrix& b)
{
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

IntMatrix FpMatrix::lift() const
{
    IntMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = static_cast<unsigned long>((*this)(i, j));
    return m;
}

FpMatrix fp_power(const FpMatrix& a, std::uint64_t e)
{
    FpMatrix r = FpMatrix::identity(a.prime(), a.rows()), b = a;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

FpEchelon fp_rref(const FpMatrix& a)
{
    FpEchelon e{a, {}};
    FpMatrix& m = e.r;
    const FpElem p = a.prime();
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
        FpElem inv = fp_inv(m(r, c), p);
        for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = mulmod(m(r, j), inv, p);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            FpElem f = p - m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) = static_cast<FpElem>((m(i, j) + static_cast<std::uint64_t>(f) * m(r, j)) % p);
        }
        e.pivots.push_back(c);
        ++r;
    }
    return e;
}

std::size_t fp_rank(const FpMatrix& a) { return fp_rref(a).pivots.size(); }

FpElem fp_determinant(const FpMatrix& a)
{
    if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
    FpMatrix m = a;
    const FpElem p = a.prime();
    const std::size_t n = m.rows();
    std::uint64_t det = 1 % p;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
            det = (p - det) % p;
        }
        det = det * m(c, c) % p;
        FpElem inv = fp_inv(m(c, c), p);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            std::uint64_t f = p - mulmod(m(i, c), inv, p);
            for (std::size_t j = c; j < n; ++j) m(i, j) = static_cast<FpElem>((m(i, j) + f * m(c, j)) % p);
        }
    }
    return static_cast<FpElem>(det);
}

std::optional<FpMatrix> fp_inverse(const FpMatrix& a)
{
    if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
    const std::size_t n = a.rows();
    FpMatrix aug(a.prime(), n, 2 * n);
    aug.set_block(0, 0, a);
    aug.set_block(0, n, FpMatrix::identity(a.prime(), n));
    FpEchelon e = fp_rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
    return e.r.block(0, n, n, n);
}

std::vector<std::vector<FpElem>> fp_nullspace(const FpMatrix& a)
{
    const FpElem p = a.prime();
    FpEchelon e = fp_rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<std::vector<FpElem>> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<FpElem> v(a.cols(), 0);
        v[f] = 1 % p;
        for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = (p - e.r(k, f)) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<FpMatrix> fp_solve(const FpMatrix& a, const FpMatrix& b)
{
    if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "F_p solve");
    const std::size_t n = a.cols();
    FpMatrix aug(a.prime(), a.rows(), n + b.cols());
    aug.set_block(0, 0, a);
    aug.set_block(0, n, b);
    FpEchelon e = fp_rref(aug);
    FpMatrix x(a.prime(), n, b.cols());
    for (std::size_t k = 0; k < e.pivots.size(); ++k) {
        if (e.pivots[k] >= n) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[k], j) = e.r(k, n + j);
    }
    return x;
}

std::vector<FpElem> FpSubspace::reduce(std::vector<FpElem> v) const
{
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        FpElem c = v[pivots_[k]];
        if (c == 0) continue;
        std::uint64_t f = p_ - c;
        const auto& row = rows_[k];
        for (std::size_t j = 0; j < n_; ++j)
            if (row[j]) v[j] = static_cast<FpElem>((v[j] + f * row[j]) % p_);
    }
    return v;
}

bool FpSubspace::insert(std::vector<FpElem> v)
{
    if (v.size() != n_) throw Error(ErrorKind::DimensionMismatch, "subspace vector length");
    for (auto& x : v) x %= p_;
    v = reduce(std::move(v));
    std::size_t piv = 0;
    while (piv < n_ && v[piv] == 0) ++piv;
    if (piv == n_) return false;
    FpElem inv = fp_inv(v[piv], p_);
    for (auto& x : v) x = mulmod(x, inv, p_);
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
}

bool FpSubspace::contains(std::vector<FpElem> v) const
{
    for (auto& x : v) x %= p_;
    v = reduce(std::move(v));
    return std::all_of(v.begin(), v.end(), [](FpElem x) { return x == 0; });
}

std::vector<std::vector<FpElem>> FpSubspace::basis() const
{
    FpMatrix m(p_, rows_.size(), n_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (std::size_t j = 0; j < n_; ++j) m(i, j) = rows_[i][j];
    FpEchelon e = fp_rref(m);
    std::vector<std::vector<FpElem>> out;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        std::vector<FpElem> r(n_);
        for (std::size_t j = 0; j < n_; ++j) r[j] = e.r(i, j);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<std::size_t> FpSubspace::free_columns() const
{
    std::vector<bool> piv(n_, false);
    for (auto c : pivots_) piv[c] = true;
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < n_; ++j)
        if (!piv[j]) out.push_back(j);
    return out;
}

std::vector<std::vector<FpElem>> FpSubspace::nullspace() const
{
    FpMatrix m(p_, rows_.size(), n_);
    for (std::size_t i = 0; i < rows_.size(); ++i)
        for (std::size_t j = 0; j < n_; ++j) m(i, j) = rows_[i][j];
    return fp_nullspace(m);
}

std::string to_string(const Int& v) { return v.get_str(); }

}  // namespace k0lat
