#include "k0lat/fp_algebra.hpp"

#include <sstream>

namespace k0lat {

namespace {

inline FpElem mulm(FpElem a, FpElem b, FpElem p)
{
    return static_cast<FpElem>((static_cast<std::uint64_t>(a) * b) % p);
}
inline FpElem addm(FpElem a, FpElem b, FpElem p)
{
    std::uint64_t s = static_cast<std::uint64_t>(a) + b;
    return static_cast<FpElem>(s >= p ? s - p : s);
}

FpVector basis_vector(std::size_t n, std::size_t i)
{
    FpVector e(n, 0);
    e[i] = 1;
    return e;
}

FpVector flatten_fp(const FpMatrix& m) { return m.data(); }

FpMatrix unflatten_fp(FpElem p, const FpVector& v, std::size_t rows, std::size_t cols)
{
    FpMatrix m(p, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = v[i * cols + j];
    return m;
}

std::size_t leading_index(const FpVector& v)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) return i;
    return v.size();
}

}  // namespace

// ---------------------------------------------------------------- FpAlgebra

FpAlgebra::FpAlgebra(FpElem p, std::size_t dim, std::vector<FpElem> table, FpVector unit)
    : p_(p), dim_(dim), table_(std::move(table)), unit_(std::move(unit))
{
    if (p > 0x7fffffffu || !is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not a supported prime");
    if (table_.size() != dim_ * dim_ * dim_) throw Error(ErrorKind::DimensionMismatch, "structure constant table size");
    if (unit_.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "unit length");
    for (auto& v : table_) v %= p_;
    for (auto& v : unit_) v %= p_;
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k)
                for (std::size_t t = 0; t < dim_; ++t) {
                    std::uint64_t lhs = 0, rhs = 0;
                    for (std::size_t s = 0; s < dim_; ++s) {
                        lhs = (lhs + static_cast<std::uint64_t>(c(i, j, s)) * c(s, k, t)) % p_;
                        rhs = (rhs + static_cast<std::uint64_t>(c(j, k, s)) * c(i, s, t)) % p_;
                    }
                    if (lhs != rhs) {
                        std::ostringstream os;
                        os << "witness (" << i << ", " << j << ", " << k << ")";
                        throw Error(ErrorKind::NotAssociative, os.str());
                    }
                }
    for (std::size_t i = 0; i < dim_; ++i) {
        FpVector e = basis_vector(dim_, i);
        if (multiply(unit_, e) != e || multiply(e, unit_) != e)
            throw Error(ErrorKind::BadUnit, "unit does not fix basis element b" + std::to_string(i));
    }
}

FpAlgebra FpAlgebra::trusted(FpElem p, std::size_t dim, std::vector<FpElem> table, FpVector unit)
{
    FpAlgebra a;
    a.p_ = p;
    a.dim_ = dim;
    a.table_ = std::move(table);
    a.unit_ = std::move(unit);
    return a;
}

FpAlgebra FpAlgebra::from_matrices(const std::vector<FpMatrix>& basis)
{
    if (basis.empty()) throw Error(ErrorKind::InvalidInput, "empty matrix algebra basis");
    const FpElem p = basis[0].prime();
    const std::size_t n = basis[0].rows(), d = basis.size();
    std::vector<FpVector> cols;
    for (const auto& b : basis) cols.push_back(flatten_fp(b));
    FpMatrix a = FpMatrix::from_columns(p, n * n, cols);
    if (fp_rank(a) != d) throw Error(ErrorKind::InvalidInput, "matrix algebra basis is dependent");
    std::vector<FpVector> rhs;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) rhs.push_back(flatten_fp(basis[i] * basis[j]));
    rhs.push_back(flatten_fp(FpMatrix::identity(p, n)));
    auto x = fp_solve(a, FpMatrix::from_columns(p, n * n, rhs));
    if (!x) throw Error(ErrorKind::InvalidInput, "matrix span is not a unital algebra");
    std::vector<FpElem> table(d * d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) table[(i * d + j) * d + k] = (*x)(k, i * d + j);
    FpVector unit(d);
    for (std::size_t k = 0; k < d; ++k) unit[k] = (*x)(k, d * d);
    return trusted(p, d, std::move(table), std::move(unit));
}

FpVector FpAlgebra::multiply(const FpVector& a, const FpVector& b) const
{
    std::vector<std::uint64_t> acc(dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (!b[j]) continue;
            std::uint64_t ab = static_cast<std::uint64_t>(a[i]) * b[j] % p_;
            const FpElem* row = &table_[(i * dim_ + j) * dim_];
            for (std::size_t k = 0; k < dim_; ++k)
                if (row[k]) acc[k] = (acc[k] + ab * row[k]) % p_;
        }
    }
    return FpVector(acc.begin(), acc.end());
}

FpMatrix FpAlgebra::left_mult(const FpVector& a) const
{
    FpMatrix m(p_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k) m(k, j) = addm(m(k, j), mulm(a[i], c(i, j, k), p_), p_);
    }
    return m;
}

std::vector<FpMatrix> FpAlgebra::regular_actions() const
{
    std::vector<FpMatrix> out;
    for (std::size_t i = 0; i < dim_; ++i) out.push_back(left_mult(basis_vector(dim_, i)));
    return out;
}

// ---------------------------------------------------------------- FpModule

FpModule::FpModule(std::shared_ptr<const FpAlgebra> alg, std::vector<FpMatrix> actions)
    : alg_(std::move(alg)), dim_(0), actions_(std::move(actions))
{
    const FpAlgebra& a = *alg_;
    const FpElem p = a.prime();
    if (actions_.size() != a.dim()) throw Error(ErrorKind::DimensionMismatch, "one action matrix per algebra basis element");
    dim_ = actions_.empty() ? 0 : actions_[0].rows();
    for (auto& m : actions_) {
        if (m.rows() != dim_ || m.cols() != dim_ || m.prime() != p)
            throw Error(ErrorKind::DimensionMismatch, "action matrix shape or field");
    }
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            FpMatrix rhs(p, dim_, dim_);
            for (std::size_t k = 0; k < a.dim(); ++k)
                if (a.c(i, j, k)) {
                    FpMatrix t = actions_[k];
                    rhs += t.scale(a.c(i, j, k));
                }
            if (actions_[i] * actions_[j] != rhs)
                throw Error(ErrorKind::InvalidInput,
                            "action does not respect b" + std::to_string(i) + "*b" + std::to_string(j));
        }
    FpMatrix u(p, dim_, dim_);
    for (std::size_t k = 0; k < a.dim(); ++k)
        if (a.unit()[k]) {
            FpMatrix t = actions_[k];
            u += t.scale(a.unit()[k]);
        }
    if (u != FpMatrix::identity(p, dim_)) throw Error(ErrorKind::BadUnit, "unit does not act as the identity");
}

FpModule::FpModule(std::shared_ptr<const FpAlgebra> alg, std::vector<FpMatrix> actions, std::size_t dim, Unchecked)
    : alg_(std::move(alg)), dim_(dim), actions_(std::move(actions))
{
}

FpModule FpModule::zero(std::shared_ptr<const FpAlgebra> alg)
{
    const FpElem p = alg->prime();
    std::vector<FpMatrix> acts(alg->dim(), FpMatrix(p, 0, 0));
    return FpModule(std::move(alg), std::move(acts), 0, Unchecked{});
}

FpModule FpModule::regular(std::shared_ptr<const FpAlgebra> alg)
{
    auto acts = alg->regular_actions();
    const std::size_t d = alg->dim();
    return FpModule(std::move(alg), std::move(acts), d, Unchecked{});
}

FpModule FpModule::change_basis(const FpMatrix& pm) const
{
    auto inv = fp_inverse(pm);
    if (!inv || pm.rows() != dim_) throw Error(ErrorKind::InvalidInput, "change of basis is not invertible");
    std::vector<FpMatrix> acts;
    for (const auto& a : actions_) acts.push_back(*inv * a * pm);
    return FpModule(alg_, std::move(acts), dim_, Unchecked{});
}

FpModule FpModule::restrict_to(const std::vector<FpVector>& basis) const
{
    const FpElem p = prime();
    const std::size_t k = basis.size();
    if (k == 0) return zero(alg_);
    FpMatrix b = FpMatrix::from_columns(p, dim_, basis);
    std::vector<FpMatrix> acts;
    for (const auto& a : actions_) {
        auto x = fp_solve(b, a * b);
        if (!x) throw Error(ErrorKind::InvalidInput, "subspace is not invariant");
        acts.push_back(std::move(*x));
    }
    return FpModule(alg_, std::move(acts), k, Unchecked{});
}

FpModule direct_sum(const FpModule& a, const FpModule& b)
{
    if (!same_algebra(a.algebra(), b.algebra())) throw Error(ErrorKind::MismatchedOrders, "modules over different algebras");
    const FpElem p = a.prime();
    const std::size_t n = a.dim() + b.dim();
    std::vector<FpMatrix> acts;
    for (std::size_t i = 0; i < a.actions().size(); ++i) {
        FpMatrix m(p, n, n);
        m.set_block(0, 0, a.action(i));
        m.set_block(a.dim(), a.dim(), b.action(i));
        acts.push_back(std::move(m));
    }
    if (n == 0) return FpModule::zero(a.algebra_ptr());
    return FpModule(a.algebra_ptr(), std::move(acts));
}

bool same_algebra(const FpAlgebra& a, const FpAlgebra& b) { return &a == &b || a == b; }

std::vector<std::size_t> algebra_generators(const FpAlgebra& a)
{
    const std::size_t d = a.dim();
    std::vector<std::size_t> gens;
    FpSubspace span(a.prime(), d);
    std::vector<FpVector> elems;
    auto close = [&]() {
        // left multiply every spanning element by every generator until stable
        for (std::size_t t = 0; t < elems.size(); ++t)
            for (auto g : gens) {
                FpVector v = a.multiply(basis_vector(d, g), elems[t]);
                if (span.insert(v)) elems.push_back(v);
            }
    };
    if (span.insert(a.unit())) elems.push_back(a.unit());
    for (std::size_t i = 0; i < d && span.dim() < d; ++i) {
        FpVector e = basis_vector(d, i);
        if (span.contains(e)) continue;
        gens.push_back(i);
        // new generator: products of it with everything so far
        for (std::size_t t = 0, n0 = elems.size(); t < n0; ++t) {
            FpVector v = a.multiply(e, elems[t]);
            if (span.insert(v)) elems.push_back(v);
        }
        close();
    }
    return gens;
}

// ---------------------------------------------------------------- Hom via spinning

namespace {

/* Spinning basis of a module under a list of generator actions: every basis
 * vector is a word in the generators applied to a root vector, and every
 * product that falls back into the span is recorded as a relation. */
struct Spin {
    struct Vec {
        std::size_t root;    // index into roots
        std::size_t parent;  // basis index, or npos for roots
        std::size_t gen;     // generator index into the action list
    };
    struct Relation {
        std::size_t t, gen;
        FpVector coeffs;  // g * b_t = sum coeffs[s] b_s
    };
    std::vector<FpVector> basis;
    std::vector<Vec> info;
    std::vector<std::size_t> roots;  // basis index of each root
    std::vector<Relation> relations;
};

class TrackedEchelon {
public:
    TrackedEchelon(FpElem p, std::size_t n) : p_(p), n_(n) {}

    // Returns true with coeffs filled if v lies in the span of inserted vectors.
    bool express(const FpVector& v, FpVector& coeffs, FpVector& residual) const
    {
        residual = v;
        coeffs.assign(n_, 0);
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            FpElem c = residual[piv_[k]];
            if (!c) continue;
            std::uint64_t f = p_ - c;
            for (std::size_t j = 0; j < n_; ++j)
                if (rows_[k][j]) residual[j] = static_cast<FpElem>((residual[j] + f * rows_[k][j]) % p_);
            for (std::size_t j = 0; j < n_; ++j)
                if (comb_[k][j]) coeffs[j] = static_cast<FpElem>((coeffs[j] + static_cast<std::uint64_t>(c) * comb_[k][j]) % p_);
        }
        return leading_index(residual) == n_;
    }

    // residual = v - sum coeffs * basis; v becomes basis vector number idx
    void add(FpVector residual, FpVector coeffs, std::size_t idx)
    {
        std::size_t piv = leading_index(residual);
        FpElem inv = fp_inv(residual[piv], p_);
        FpVector comb(n_, 0);
        for (std::size_t j = 0; j < n_; ++j) comb[j] = coeffs[j] ? p_ - coeffs[j] : 0;
        comb[idx] = addm(comb[idx], 1, p_);
        for (auto& x : residual) x = mulm(x, inv, p_);
        for (auto& x : comb) x = mulm(x, inv, p_);
        rows_.push_back(std::move(residual));
        comb_.push_back(std::move(comb));
        piv_.push_back(piv);
    }

    std::size_t dim() const { return rows_.size(); }

private:
    FpElem p_;
    std::size_t n_;
    std::vector<FpVector> rows_, comb_;
    std::vector<std::size_t> piv_;
};

Spin spin_module(const FpModule& m, const std::vector<std::size_t>& gens)
{
    const FpElem p = m.prime();
    const std::size_t n = m.dim();
    Spin s;
    TrackedEchelon ech(p, n);
    FpVector coeffs, residual;
    std::size_t next = 0;
    for (std::size_t i = 0; i < n && s.basis.size() < n; ++i) {
        FpVector e = basis_vector(n, i);
        if (ech.express(e, coeffs, residual)) continue;
        std::size_t idx = s.basis.size();
        ech.add(residual, coeffs, idx);
        s.basis.push_back(e);
        s.info.push_back({s.roots.size(), static_cast<std::size_t>(-1), 0});
        s.roots.push_back(idx);
        for (; next < s.basis.size(); ++next)
            for (std::size_t g = 0; g < gens.size(); ++g) {
                FpVector v = m.action(gens[g]) * s.basis[next];
                if (ech.express(v, coeffs, residual)) {
                    s.relations.push_back({next, g, coeffs});
                } else {
                    std::size_t id2 = s.basis.size();
                    ech.add(residual, coeffs, id2);
                    s.basis.push_back(std::move(v));
                    s.info.push_back({s.info[next].root, next, g});
                }
            }
    }
    return s;
}

}  // namespace

std::vector<FpMatrix> hom_space(const FpModule& m, const FpModule& n)
{
    if (!same_algebra(m.algebra(), n.algebra())) throw Error(ErrorKind::MismatchedOrders, "modules over different algebras");
    const FpElem p = m.prime();
    const std::size_t dm = m.dim(), dn = n.dim();
    if (dm == 0 || dn == 0) return {};
    std::vector<std::size_t> gens = algebra_generators(m.algebra());
    Spin s = spin_module(m, gens);
    const std::size_t roots = s.roots.size();
    const std::size_t vars = roots * dn;

    // word matrices acting on N
    std::vector<FpMatrix> w;
    w.reserve(dm);
    for (std::size_t t = 0; t < dm; ++t) {
        if (s.info[t].parent == static_cast<std::size_t>(-1))
            w.push_back(FpMatrix::identity(p, dn));
        else
            w.push_back(n.action(gens[s.info[t].gen]) * w[s.info[t].parent]);
    }

    FpSubspace eqs(p, vars);
    for (const auto& rel : s.relations) {
        if (eqs.dim() == vars) break;
        FpMatrix block(p, dn, vars);
        FpMatrix lhs = n.action(gens[rel.gen]) * w[rel.t];
        std::size_t r0 = s.info[rel.t].root;
        for (std::size_t i = 0; i < dn; ++i)
            for (std::size_t j = 0; j < dn; ++j) block(i, r0 * dn + j) = lhs(i, j);
        for (std::size_t t = 0; t < dm; ++t) {
            FpElem c = rel.coeffs[t];
            if (!c) continue;
            std::size_t rt = s.info[t].root;
            FpElem f = p - c;
            for (std::size_t i = 0; i < dn; ++i)
                for (std::size_t j = 0; j < dn; ++j)
                    if (w[t](i, j)) block(i, rt * dn + j) = addm(block(i, rt * dn + j), mulm(f, w[t](i, j), p), p);
        }
        for (std::size_t i = 0; i < dn; ++i) {
            FpVector row(block.data().begin() + static_cast<std::ptrdiff_t>(i * vars),
                         block.data().begin() + static_cast<std::ptrdiff_t>((i + 1) * vars));
            eqs.insert(std::move(row));
        }
    }
    if (eqs.dim() == vars) return {};
    auto sols = eqs.nullspace();

    FpMatrix bm = FpMatrix::from_columns(p, dm, s.basis);
    auto binv = fp_inverse(bm);
    std::vector<FpMatrix> out;
    for (const auto& u : sols) {
        FpMatrix phi_b(p, dn, dm);
        for (std::size_t t = 0; t < dm; ++t) {
            std::size_t r = s.info[t].root;
            FpVector ur(u.begin() + static_cast<std::ptrdiff_t>(r * dn), u.begin() + static_cast<std::ptrdiff_t>((r + 1) * dn));
            FpVector col = w[t] * ur;
            for (std::size_t i = 0; i < dn; ++i) phi_b(i, t) = col[i];
        }
        out.push_back(phi_b * *binv);
    }
    return out;
}

MatrixAlgebra end_algebra(const FpModule& m)
{
    MatrixAlgebra a;
    a.p = m.prime();
    a.n = m.dim();
    if (a.n == 0) return a;
    FpSubspace span(a.p, a.n * a.n);
    for (const auto& h : hom_space(m, m)) span.insert(flatten_fp(h));
    for (const auto& v : span.basis()) a.basis.push_back(unflatten_fp(a.p, v, a.n, a.n));
    return a;
}

// ---------------------------------------------------------------- radical

namespace {

/* Structure constants of a matrix algebra whose flattened basis is in
 * reduced echelon form: coordinates are read off at the pivots. */
FpAlgebra structure_of(const MatrixAlgebra& a)
{
    const std::size_t d = a.basis.size();
    std::vector<std::size_t> piv;
    for (const auto& b : a.basis) piv.push_back(leading_index(b.data()));
    auto coords = [&](const FpMatrix& x) {
        FpVector c(d);
        for (std::size_t k = 0; k < d; ++k) c[k] = x.data()[piv[k]];
        return c;
    };
    std::vector<FpElem> table(d * d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            FpVector c = coords(a.basis[i] * a.basis[j]);
            std::copy(c.begin(), c.end(), table.begin() + static_cast<std::ptrdiff_t>((i * d + j) * d));
        }
    return FpAlgebra::trusted(a.p, d, std::move(table), coords(FpMatrix::identity(a.p, a.n)));
}

// trace of x^e over Z/q, x given with entries in [0, q)
std::uint64_t trace_power_mod(const std::vector<std::uint64_t>& x, std::size_t n, std::uint64_t e, std::uint64_t q)
{
    auto mul = [&](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
        std::vector<std::uint64_t> r(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                std::uint64_t aik = a[i * n + k];
                if (!aik) continue;
                for (std::size_t j = 0; j < n; ++j) r[i * n + j] = (r[i * n + j] + aik * b[k * n + j]) % q;
            }
        return r;
    };
    std::vector<std::uint64_t> r(n * n, 0), b = x;
    for (std::size_t i = 0; i < n; ++i) r[i * n + i] = 1 % q;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < n; ++i) t = (t + r[i * n + i]) % q;
    return t;
}

}  // namespace

std::vector<FpVector> radical(const FpAlgebra& a)
{
    const std::size_t d = a.dim();
    const FpElem p = a.prime();
    if (d == 0) return {};
    std::size_t levels = 0;  // floor(log_p d)
    for (std::uint64_t pw = p; pw <= d; pw *= p) ++levels;

    std::vector<FpMatrix> reg = a.regular_actions();
    std::vector<FpElem> tr(d);
    for (std::size_t m = 0; m < d; ++m) tr[m] = reg[m].trace();

    std::vector<FpVector> ideal;
    for (std::size_t i = 0; i < d; ++i) ideal.push_back(basis_vector(d, i));

    std::uint64_t pi = 1;  // p^i
    for (std::size_t level = 0; level <= levels && !ideal.empty(); ++level) {
        const std::uint64_t q = pi * p;
        FpMatrix g(p, d, ideal.size());
        for (std::size_t c = 0; c < ideal.size(); ++c)
            for (std::size_t j = 0; j < d; ++j) {
                FpVector x = a.multiply(ideal[c], basis_vector(d, j));
                std::uint64_t val;
                if (level == 0) {
                    std::uint64_t t = 0;
                    for (std::size_t m = 0; m < d; ++m) t = (t + static_cast<std::uint64_t>(x[m]) * tr[m]) % p;
                    val = t;
                } else {
                    std::vector<std::uint64_t> lx(d * d, 0);
                    for (std::size_t m = 0; m < d; ++m)
                        if (x[m])
                            for (std::size_t k = 0; k < d * d; ++k)
                                lx[k] = (lx[k] + static_cast<std::uint64_t>(x[m]) * reg[m].data()[k]) % p;
                    std::uint64_t t = trace_power_mod(lx, d, pi, q);
                    if (t % pi != 0) throw Error(ErrorKind::InvalidInput, "radical: trace condition violated");
                    val = t / pi;
                }
                g(j, c) = static_cast<FpElem>(val);
            }
        std::vector<FpVector> next;
        for (const auto& lam : fp_nullspace(g)) {
            FpVector v(d, 0);
            for (std::size_t c = 0; c < ideal.size(); ++c)
                if (lam[c])
                    for (std::size_t k = 0; k < d; ++k) v[k] = addm(v[k], mulm(lam[c], ideal[c][k], p), p);
            next.push_back(std::move(v));
        }
        ideal = std::move(next);
        pi = q;
    }
    FpSubspace s(p, d);
    for (auto& v : ideal) s.insert(v);
    return s.basis();
}

std::vector<FpMatrix> radical(const MatrixAlgebra& a)
{
    if (a.basis.empty()) return {};
    FpAlgebra s = structure_of(a);
    std::vector<FpMatrix> out;
    for (const auto& v : radical(s)) {
        FpMatrix m(a.p, a.n, a.n);
        for (std::size_t k = 0; k < v.size(); ++k)
            if (v[k]) {
                FpMatrix t = a.basis[k];
                m += t.scale(v[k]);
            }
        out.push_back(std::move(m));
    }
    return out;
}

bool is_local(const MatrixAlgebra& a, const std::vector<FpMatrix>& rad)
{
    if (a.basis.empty()) return false;
    const FpElem p = a.p;
    FpAlgebra s = structure_of(a);
    const std::size_t d = s.dim();
    std::vector<std::size_t> piv;
    for (const auto& b : a.basis) piv.push_back(leading_index(b.data()));
    FpSubspace j(p, d);
    for (const auto& r : rad) {
        FpVector c(d);
        for (std::size_t k = 0; k < d; ++k) c[k] = r.data()[piv[k]];
        j.insert(std::move(c));
    }
    std::vector<std::size_t> free = j.free_columns();
    const std::size_t q = free.size();
    if (q == 0) return false;
    for (std::size_t x = 0; x < q; ++x)
        for (std::size_t y = x + 1; y < q; ++y) {
            FpVector ex = basis_vector(d, free[x]), ey = basis_vector(d, free[y]);
            FpVector u = s.multiply(ex, ey), v = s.multiply(ey, ex);
            for (std::size_t k = 0; k < d; ++k) u[k] = addm(u[k], p - v[k], p);
            if (!j.contains(u)) return false;
        }
    // A/J is commutative semisimple: a field iff the Frobenius fixes only F_p
    FpMatrix fr(p, q, q);
    for (std::size_t x = 0; x < q; ++x) {
        FpVector base = basis_vector(d, free[x]);
        FpVector r = s.unit();
        std::uint64_t e = p;
        while (e) {
            if (e & 1) r = j.reduce(s.multiply(r, base));
            e >>= 1;
            if (e) base = j.reduce(s.multiply(base, base));
        }
        for (std::size_t y = 0; y < q; ++y) fr(y, x) = r[free[y]];
        fr(x, x) = addm(fr(x, x), p - 1, p);
    }
    return q - fp_rank(fr) == 1;
}

}  // namespace k0lat
