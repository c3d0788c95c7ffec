#include "k0lat/zorder.hpp"

#include <sstream>

namespace k0lat {

// ---------------------------------------------------------------- Order

Order::Order(std::size_t rank, std::vector<Int> table, IntVector unit)
    : n_(rank), table_(std::move(table)), unit_(std::move(unit))
{
    if (n_ == 0) throw Error(ErrorKind::InvalidInput, "order of rank 0");
    if (table_.size() != n_ * n_ * n_) throw Error(ErrorKind::DimensionMismatch, "structure constant table size");
    if (unit_.size() != n_) throw Error(ErrorKind::DimensionMismatch, "unit length");

    // products b_i b_j as coordinate vectors
    std::vector<IntVector> prod(n_ * n_, IntVector(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k) prod[i * n_ + j][k] = c(i, j, k);

    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k) {
                // (b_i b_j) b_k versus b_i (b_j b_k)
                for (std::size_t t = 0; t < n_; ++t) {
                    Int lhs = 0, rhs = 0;
                    for (std::size_t s = 0; s < n_; ++s) {
                        lhs += prod[i * n_ + j][s] * c(s, k, t);
                        rhs += prod[j * n_ + k][s] * c(i, s, t);
                    }
                    if (lhs != rhs) {
                        std::ostringstream os;
                        os << "(b" << i << "*b" << j << ")*b" << k << " != b" << i << "*(b" << j << "*b" << k
                           << "), witness (" << i << ", " << j << ", " << k << ")";
                        throw Error(ErrorKind::NotAssociative, os.str());
                    }
                }
            }

    IntVector e(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        std::fill(e.begin(), e.end(), Int(0));
        e[i] = 1;
        if (multiply(unit_, e) != e || multiply(e, unit_) != e) {
            std::ostringstream os;
            os << "unit does not fix basis element b" << i << ", witness (unit, " << i << ")";
            throw Error(ErrorKind::BadUnit, os.str());
        }
    }
}

Order Order::integers() { return Order(1, {Int(1)}, {Int(1)}); }

Order Order::quadratic(long a, long b)
{
    // x*x = b*1 + a*x
    std::vector<Int> t(8);
    auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> Int& { return t[(i * 2 + j) * 2 + k]; };
    at(0, 0, 0) = 1;
    at(0, 1, 1) = 1;
    at(1, 0, 1) = 1;
    at(1, 1, 0) = b;
    at(1, 1, 1) = a;
    return Order(2, std::move(t), {Int(1), Int(0)});
}

IntVector Order::multiply(const IntVector& a, const IntVector& b) const
{
    IntVector r(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) {
            if (b[j] == 0) continue;
            Int ab = a[i] * b[j];
            for (std::size_t k = 0; k < n_; ++k)
                if (c(i, j, k) != 0) r[k] += ab * c(i, j, k);
        }
    }
    return r;
}

IntMatrix Order::left_mult(const IntVector& a) const
{
    IntMatrix m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k) m(k, j) += a[i] * c(i, j, k);
    }
    return m;
}

IntMatrix Order::right_mult(const IntVector& a) const
{
    IntMatrix m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t k = 0; k < n_; ++k) m(k, j) += a[i] * c(j, i, k);
    }
    return m;
}

static FpElem reduce_int(const Int& v, FpElem p)
{
    return static_cast<FpElem>(mpz_fdiv_ui(v.get_mpz_t(), p));
}

FpAlgebra Order::reduce_mod(FpElem p) const
{
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
    std::vector<FpElem> t(table_.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = reduce_int(table_[i], p);
    FpVector u(n_);
    for (std::size_t i = 0; i < n_; ++i) u[i] = reduce_int(unit_[i], p);
    return FpAlgebra(p, n_, std::move(t), std::move(u));
}

Order validate_order(std::size_t rank, const std::vector<Int>& table, const IntVector& unit)
{
    return Order(rank, table, unit);
}

// ---------------------------------------------------------------- LatticeModule

LatticeModule::LatticeModule(std::shared_ptr<const Order> order, std::vector<IntMatrix> actions)
    : order_(std::move(order)), rank_(0), actions_(std::move(actions))
{
    const Order& o = *order_;
    if (actions_.size() != o.rank()) throw Error(ErrorKind::DimensionMismatch, "one action matrix per order basis element");
    rank_ = actions_[0].rows();
    for (const auto& a : actions_)
        if (a.rows() != rank_ || a.cols() != rank_) throw Error(ErrorKind::DimensionMismatch, "action matrix shape");
    const std::size_t n = o.rank();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntMatrix rhs(rank_, rank_);
            for (std::size_t k = 0; k < n; ++k)
                if (o.c(i, j, k) != 0) rhs += o.c(i, j, k) * actions_[k];
            if (actions_[i] * actions_[j] != rhs) {
                std::ostringstream os;
                os << "action does not respect b" << i << "*b" << j;
                throw Error(ErrorKind::InvalidInput, os.str());
            }
        }
    IntMatrix u(rank_, rank_);
    for (std::size_t k = 0; k < n; ++k)
        if (o.unit()[k] != 0) u += o.unit()[k] * actions_[k];
    if (u != IntMatrix::identity(rank_)) throw Error(ErrorKind::BadUnit, "unit does not act as the identity");
}

LatticeModule::LatticeModule(std::shared_ptr<const Order> order, std::vector<IntMatrix> actions, std::size_t rank,
                             Unchecked)
    : order_(std::move(order)), rank_(rank), actions_(std::move(actions))
{
}

LatticeModule LatticeModule::zero(std::shared_ptr<const Order> order)
{
    std::vector<IntMatrix> acts(order->rank(), IntMatrix(0, 0));
    return LatticeModule(std::move(order), std::move(acts), 0, Unchecked{});
}

LatticeModule LatticeModule::free(std::shared_ptr<const Order> order, std::size_t m)
{
    if (order->rank() != 1) throw Error(ErrorKind::InvalidInput, "free modules are built over the integers only");
    // b0 * b0 = c b0 forces c = +-1 and b0 acting as c
    Int c = order->c(0, 0, 0);
    std::vector<IntMatrix> acts{c * IntMatrix::identity(m)};
    return LatticeModule(std::move(order), std::move(acts));
}

LatticeModule LatticeModule::regular(std::shared_ptr<const Order> order)
{
    std::vector<IntMatrix> acts;
    const std::size_t n = order->rank();
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n);
        e[i] = 1;
        acts.push_back(order->left_mult(e));
    }
    return LatticeModule(std::move(order), std::move(acts), n, Unchecked{});
}

LatticeModule LatticeModule::conjugate(const IntMatrix& u) const
{
    if (u.rows() != rank_ || u.cols() != rank_) throw Error(ErrorKind::DimensionMismatch, "change of basis shape");
    IntMatrix inv = unimodular_inverse(u);
    std::vector<IntMatrix> acts;
    for (const auto& a : actions_) acts.push_back(u * a * inv);
    return LatticeModule(order_, std::move(acts), rank_, Unchecked{});
}

LatticeModule LatticeModule::sublattice(const IntMatrix& s) const
{
    if (s.rows() != rank_) throw Error(ErrorKind::DimensionMismatch, "sublattice basis shape");
    if (k0lat::rank(s) != s.cols()) throw Error(ErrorKind::InvalidInput, "sublattice basis is not independent");
    IntegerSolver solver(s);
    std::vector<IntMatrix> acts;
    for (const auto& a : actions_) {
        IntMatrix as = a * s;
        IntMatrix na(s.cols(), s.cols());
        for (std::size_t j = 0; j < s.cols(); ++j) {
            auto x = solver.solve(as.column(j));
            if (!x) throw Error(ErrorKind::InvalidInput, "sublattice is not invariant under the action");
            for (std::size_t i = 0; i < s.cols(); ++i) na(i, j) = (*x)[i];
        }
        acts.push_back(std::move(na));
    }
    return LatticeModule(order_, std::move(acts), s.cols(), Unchecked{});
}

bool same_order(const LatticeModule& x, const LatticeModule& y)
{
    return x.order_ptr() == y.order_ptr() || x.order() == y.order();
}

// ---------------------------------------------------------------- Hom

IntMatrix HomLattice::element(const IntVector& coeffs) const
{
    if (coeffs.size() != basis.size()) throw Error(ErrorKind::DimensionMismatch, "hom coordinates");
    IntMatrix m(target_rank, source_rank);
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (coeffs[i] != 0) m += coeffs[i] * basis[i];
    return m;
}

std::optional<IntVector> HomLattice::coordinates(const IntMatrix& phi) const
{
    if (phi.rows() != target_rank || phi.cols() != source_rank)
        throw Error(ErrorKind::DimensionMismatch, "hom element shape");
    if (basis.empty()) {
        if (phi.is_zero()) return IntVector{};
        return std::nullopt;
    }
    std::vector<IntVector> cols;
    for (const auto& b : basis) cols.push_back(flatten(b));
    return solve_integer(IntMatrix::from_columns(target_rank * source_rank, cols), flatten(phi));
}

HomLattice intertwiners(std::size_t s, std::size_t t, const std::vector<IntMatrix>& source_ops,
                        const std::vector<IntMatrix>& target_ops)
{
    if (source_ops.size() != target_ops.size()) throw Error(ErrorKind::DimensionMismatch, "operator lists differ in length");
    HomLattice h{s, t, {}};
    const std::size_t vars = s * t;
    if (vars == 0) return h;
    std::vector<IntVector> rows;
    for (std::size_t q = 0; q < source_ops.size(); ++q) {
        const IntMatrix& a = source_ops[q];
        const IntMatrix& b = target_ops[q];
        if (a.rows() != s || a.cols() != s || b.rows() != t || b.cols() != t)
            throw Error(ErrorKind::DimensionMismatch, "operator shape");
        // (phi a - b phi)(r, c) = sum_k phi(r,k) a(k,c) - sum_k b(r,k) phi(k,c)
        for (std::size_t r = 0; r < t; ++r)
            for (std::size_t c = 0; c < s; ++c) {
                IntVector row(vars);
                bool nz = false;
                for (std::size_t k = 0; k < s; ++k)
                    if (a(k, c) != 0) {
                        row[r * s + k] += a(k, c);
                        nz = true;
                    }
                for (std::size_t k = 0; k < t; ++k)
                    if (b(r, k) != 0) {
                        row[k * s + c] -= b(r, k);
                        nz = true;
                    }
                if (nz && std::any_of(row.begin(), row.end(), [](const Int& v) { return v != 0; }))
                    rows.push_back(std::move(row));
            }
    }
    std::vector<IntVector> ker;
    if (rows.empty()) {
        for (std::size_t i = 0; i < vars; ++i) {
            IntVector e(vars);
            e[i] = 1;
            ker.push_back(std::move(e));
        }
    } else {
        // reduce the system first so the kernel step works on few rows
        ker = kernel_basis(hnf_rows(IntMatrix::from_rows(vars, rows)));
    }
    for (const auto& v : ker) h.basis.push_back(unflatten(v, t, s));
    return h;
}

HomLattice hom_group(const LatticeModule& x, const LatticeModule& y)
{
    if (!same_order(x, y)) throw Error(ErrorKind::MismatchedOrders, "modules over different orders");
    return intertwiners(x.rank(), y.rank(), x.actions(), y.actions());
}

Order ring_of(const HomLattice& end)
{
    const std::size_t r = end.rank();
    const std::size_t m = end.source_rank;
    if (end.target_rank != m) throw Error(ErrorKind::DimensionMismatch, "endomorphisms must be square");
    std::vector<IntVector> cols;
    for (const auto& b : end.basis) cols.push_back(flatten(b));
    IntegerSolver solver(IntMatrix::from_columns(m * m, cols));
    std::vector<Int> table(r * r * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            auto x = solver.solve(flatten(end.basis[i] * end.basis[j]));
            if (!x) throw Error(ErrorKind::InvalidInput, "hom lattice is not closed under composition");
            for (std::size_t k = 0; k < r; ++k) table[(i * r + j) * r + k] = (*x)[k];
        }
    auto u = solver.solve(flatten(IntMatrix::identity(m)));
    if (!u) throw Error(ErrorKind::BadUnit, "identity is not in the hom lattice");
    return Order(r, std::move(table), std::move(*u));
}

EndRing end_ring(const LatticeModule& x)
{
    if (x.rank() == 0) throw Error(ErrorKind::InvalidInput, "the zero module has the zero endomorphism ring");
    HomLattice h = hom_group(x, x);
    Order o = ring_of(h);
    return EndRing{std::move(o), std::move(h)};
}

bool is_end_trivial(const HomLattice& end)
{
    if (end.rank() != 1) return false;
    IntMatrix id = IntMatrix::identity(end.source_rank);
    return end.basis[0] == id || end.basis[0] == -id;
}

bool is_end_trivial(const LatticeModule& x) { return x.rank() > 0 && is_end_trivial(hom_group(x, x)); }

LatticeModule direct_sum(const LatticeModule& x, const LatticeModule& y)
{
    if (!same_order(x, y)) throw Error(ErrorKind::MismatchedOrders, "modules over different orders");
    std::vector<IntMatrix> acts;
    for (std::size_t i = 0; i < x.actions().size(); ++i) acts.push_back(block_diagonal({x.action(i), y.action(i)}));
    return LatticeModule(x.order_ptr(), std::move(acts));
}

LatticeModule power(const LatticeModule& x, std::size_t n)
{
    if (n == 0) return LatticeModule::zero(x.order_ptr());
    std::vector<IntMatrix> acts;
    for (const auto& a : x.actions()) acts.push_back(block_diagonal(std::vector<IntMatrix>(n, a)));
    if (x.rank() * n == 0) return LatticeModule::zero(x.order_ptr());
    return LatticeModule(x.order_ptr(), std::move(acts));
}

FpModule tensor_fp(const LatticeModule& x, FpElem p)
{
    auto alg = std::make_shared<const FpAlgebra>(x.order().reduce_mod(p));
    if (x.rank() == 0) return FpModule::zero(alg);
    std::vector<FpMatrix> acts;
    for (const auto& a : x.actions()) acts.push_back(FpMatrix::reduce(a, p));
    return FpModule(alg, std::move(acts));
}

}  // namespace k0lat
