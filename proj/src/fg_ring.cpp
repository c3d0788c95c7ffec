#include "k0lat/fg_ring.hpp"

#include <algorithm>
#include <climits>

#include "k0lat/fp_algebra.hpp"

namespace k0lat {

namespace {

Int floor_mod(const Int& a, const Int& d)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return r;
}

IntVector unit_vector(std::size_t n, std::size_t i)
{
    IntVector v(n);
    v[i] = 1;
    return v;
}

/* [a | d_k e_k for each nonzero modulus] so that solutions absorb the relations. */
IntMatrix with_relations(const IntMatrix& a, const IntVector& moduli)
{
    std::vector<IntVector> extra;
    for (std::size_t k = 0; k < moduli.size(); ++k)
        if (moduli[k] != 0) {
            IntVector c(moduli.size());
            c[k] = moduli[k];
            extra.push_back(std::move(c));
        }
    if (extra.empty()) return a;
    return hstack(a, IntMatrix::from_columns(a.rows(), extra));
}

std::optional<IntVector> head(const std::optional<IntVector>& x, std::size_t n)
{
    if (!x) return std::nullopt;
    return IntVector(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(n));
}

/* A/pA for one prime p dividing |A|: the generators whose modulus p divides. */
struct PrimeLayer {
    FpElem p = 2;
    std::vector<std::size_t> idx;
    std::shared_ptr<const FpAlgebra> alg;
    std::vector<FpVector> rad;

    FpVector reduce(const IntVector& x) const
    {
        FpVector v(idx.size());
        for (std::size_t r = 0; r < idx.size(); ++r) v[r] = static_cast<FpElem>(floor_mod(x[idx[r]], p).get_ui());
        return v;
    }
    IntVector lift(const FpVector& v, std::size_t n) const
    {
        IntVector x(n);
        for (std::size_t r = 0; r < idx.size(); ++r) x[idx[r]] = v[r];
        return x;
    }
};

std::vector<PrimeLayer> prime_layers(const FgRing& a)
{
    if (!a.is_finite()) throw Error(ErrorKind::InvalidInput, "ring is not finite");
    std::vector<Int> primes;
    for (const auto& d : a.moduli())
        if (d > 1)
            for (const auto& q : prime_divisors(d))
                if (std::find(primes.begin(), primes.end(), q) == primes.end()) primes.push_back(q);
    std::sort(primes.begin(), primes.end());
    std::vector<PrimeLayer> out;
    const std::size_t n = a.gens();
    for (const auto& q : primes) {
        if (q > INT_MAX) throw Error(ErrorKind::TooLarge, "prime divisor " + to_string(q) + " of the ring order exceeds 2^31");
        PrimeLayer layer;
        layer.p = static_cast<FpElem>(q.get_ui());
        for (std::size_t i = 0; i < n; ++i)
            if (a.moduli()[i] % q == 0) layer.idx.push_back(i);
        const std::size_t r = layer.idx.size();
        std::vector<FpElem> table(r * r * r);
        for (std::size_t x = 0; x < r; ++x)
            for (std::size_t y = 0; y < r; ++y)
                for (std::size_t z = 0; z < r; ++z)
                    table[(x * r + y) * r + z] =
                        static_cast<FpElem>(floor_mod(a.c(layer.idx[x], layer.idx[y], layer.idx[z]), q).get_ui());
        layer.alg = std::make_shared<const FpAlgebra>(FpAlgebra::trusted(layer.p, r, std::move(table), layer.reduce(a.unit())));
        layer.rad = radical(*layer.alg);
        out.push_back(std::move(layer));
    }
    return out;
}

/* Columns generating the preimage of J(A/pA) in Z^n. */
IntMatrix layer_lattice(const PrimeLayer& layer, std::size_t n)
{
    std::vector<IntVector> cols;
    for (const auto& v : layer.rad) cols.push_back(layer.lift(v, n));
    std::vector<bool> in_idx(n, false);
    for (auto i : layer.idx) in_idx[i] = true;
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e = unit_vector(n, i);
        if (in_idx[i]) e[i] = layer.p;
        cols.push_back(std::move(e));
    }
    return IntMatrix::from_columns(n, cols);
}

/* Identity of the ideal (K + J)/J of the semisimple F_p-algebra A/J. */
FpVector ideal_identity(const PrimeLayer& layer, const std::vector<FpVector>& kernel)
{
    const FpElem p = layer.p;
    const std::size_t r = layer.idx.size();
    FpSubspace js(p, r), span(p, r);
    for (const auto& v : layer.rad) {
        js.insert(v);
        span.insert(v);
    }
    for (const auto& v : kernel) span.insert(v);
    auto basis = span.basis();
    const std::size_t s = basis.size();
    if (s == 0) return FpVector(r, 0);
    const FpAlgebra& alg = *layer.alg;
    FpMatrix sys(p, 2 * s * r, s), rhs(p, 2 * s * r, 1);
    std::size_t row = 0;
    for (const auto& h : basis) {
        FpVector rh = js.reduce(h);
        for (int side = 0; side < 2; ++side) {
            std::vector<FpVector> prods;
            for (const auto& g : basis) prods.push_back(js.reduce(side == 0 ? alg.multiply(g, h) : alg.multiply(h, g)));
            for (std::size_t k = 0; k < r; ++k, ++row) {
                for (std::size_t g = 0; g < s; ++g) sys(row, g) = prods[g][k];
                rhs(row, 0) = rh[k];
            }
        }
    }
    auto c = fp_solve(sys, rhs);
    if (!c) throw Error(ErrorKind::InvalidInput, "kernel image has no identity modulo the radical");
    FpVector e(r, 0);
    for (std::size_t g = 0; g < s; ++g)
        for (std::size_t k = 0; k < r; ++k)
            e[k] = static_cast<FpElem>((e[k] + static_cast<std::uint64_t>((*c)(g, 0)) * basis[g][k]) % p);
    return e;
}

Int product_of(const IntVector& v)
{
    Int r = 1;
    for (const auto& x : v) r *= x;
    return r;
}

}  // namespace

/* ---- FgRing ---- */

FgRing::FgRing(IntVector moduli, std::vector<Int> table, IntVector unit)
    : moduli_(std::move(moduli)), table_(std::move(table)), unit_(std::move(unit))
{
    const std::size_t n = moduli_.size();
    if (table_.size() != n * n * n) throw Error(ErrorKind::DimensionMismatch, "multiplication table must have gens^3 entries");
    if (unit_.size() != n) throw Error(ErrorKind::DimensionMismatch, "unit must have one coordinate per generator");
    for (const auto& d : moduli_)
        if (d < 0) throw Error(ErrorKind::InvalidInput, "moduli must be nonnegative");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Int& t = table_[(i * n + j) * n + k];
                if (moduli_[k] != 0) t = floor_mod(t, moduli_[k]);
            }
    unit_ = normalize(unit_);

    auto row = [&](std::size_t i, std::size_t j) {
        return IntVector(table_.begin() + static_cast<std::ptrdiff_t>((i * n + j) * n),
                         table_.begin() + static_cast<std::ptrdiff_t>((i * n + j + 1) * n));
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (moduli_[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            IntVector a = row(i, j), b = row(j, i);
            for (auto& x : a) x *= moduli_[i];
            for (auto& x : b) x *= moduli_[i];
            if (normalize(a) != zero() || normalize(b) != zero())
                throw Error(ErrorKind::InvalidInput, "multiplication is not compatible with the additive relations at generator " +
                                                         std::to_string(i));
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                IntVector l(n), r(n);
                for (std::size_t s = 0; s < n; ++s) {
                    const Int& a = c(i, j, s);
                    const Int& b = c(j, k, s);
                    for (std::size_t t = 0; t < n; ++t) {
                        if (a != 0) l[t] += a * c(s, k, t);
                        if (b != 0) r[t] += b * c(i, s, t);
                    }
                }
                if (normalize(l) != normalize(r))
                    throw Error(ErrorKind::NotAssociative, "witness (" + std::to_string(i) + ", " + std::to_string(j) + ", " +
                                                               std::to_string(k) + ")");
            }
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e = normalize(unit_vector(n, i));
        if (multiply(unit_, e) != e || multiply(e, unit_) != e)
            throw Error(ErrorKind::BadUnit, "unit fails on generator " + std::to_string(i));
    }
}

FgRing FgRing::zmod(const Int& n)
{
    if (n < 0) throw Error(ErrorKind::InvalidInput, "modulus must be nonnegative");
    return FgRing({n}, {Int(1)}, {Int(1)});
}

FgRing FgRing::matrix_ring(std::size_t k, const Int& n)
{
    if (k == 0) throw Error(ErrorKind::InvalidInput, "matrix size must be positive");
    const std::size_t g = k * k;
    std::vector<Int> table(g * g * g);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t l = 0; l < k; ++l) table[((i * k + j) * g + (j * k + l)) * g + (i * k + l)] = 1;
    IntVector unit(g);
    for (std::size_t i = 0; i < k; ++i) unit[i * k + i] = 1;
    return FgRing(IntVector(g, n), std::move(table), std::move(unit));
}

FgRing FgRing::from_order(const Order& o) { return FgRing(IntVector(o.rank()), o.table(), o.unit()); }

bool FgRing::is_finite() const
{
    return std::none_of(moduli_.begin(), moduli_.end(), [](const Int& d) { return d == 0; });
}

Int FgRing::size() const
{
    if (!is_finite()) throw Error(ErrorKind::InvalidInput, "ring is not finite");
    return product_of(moduli_);
}

IntVector FgRing::normalize(IntVector v) const
{
    if (v.size() != gens()) throw Error(ErrorKind::DimensionMismatch, "element has the wrong number of coordinates");
    for (std::size_t i = 0; i < v.size(); ++i)
        if (moduli_[i] != 0) v[i] = floor_mod(v[i], moduli_[i]);
    return v;
}

IntVector FgRing::add(const IntVector& a, const IntVector& b) const
{
    IntVector r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return normalize(std::move(r));
}

IntVector FgRing::sub(const IntVector& a, const IntVector& b) const
{
    IntVector r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return normalize(std::move(r));
}

IntVector FgRing::multiply(const IntVector& a, const IntVector& b) const
{
    const std::size_t n = gens();
    if (a.size() != n || b.size() != n) throw Error(ErrorKind::DimensionMismatch, "element has the wrong number of coordinates");
    IntVector r(n);
    Int t;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b[j] == 0) continue;
            t = a[i] * b[j];
            for (std::size_t k = 0; k < n; ++k)
                if (c(i, j, k) != 0) r[k] += t * c(i, j, k);
        }
    }
    return normalize(std::move(r));
}

std::optional<IntVector> FgRing::inverse(const IntVector& x) const
{
    const std::size_t n = gens();
    IntMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        IntVector col = multiply(x, normalize(unit_vector(n, j)));
        for (std::size_t k = 0; k < n; ++k) l(k, j) = col[k];
    }
    auto y = head(solve_integer(with_relations(l, moduli_), unit_), n);
    if (!y) return std::nullopt;
    IntVector inv = normalize(*y);
    if (multiply(inv, x) != unit_) return std::nullopt;
    return inv;
}

FgRing FgRing::reduce_mod(const Int& n) const
{
    if (n <= 0) throw Error(ErrorKind::InvalidInput, "reduction modulus must be positive");
    IntVector m(gens());
    for (std::size_t i = 0; i < gens(); ++i) m[i] = gcd(moduli_[i], n);
    return FgRing(std::move(m), table_, unit_);
}

IntMatrix FgRing::relations() const
{
    std::vector<IntVector> rows;
    for (std::size_t i = 0; i < gens(); ++i)
        if (moduli_[i] != 0) {
            IntVector r(gens());
            r[i] = moduli_[i];
            rows.push_back(std::move(r));
        }
    return IntMatrix::from_rows(gens(), rows);
}

std::vector<IntVector> FgRing::elements(std::size_t cap) const
{
    if (!is_finite() || size() > cap)
        throw Error(ErrorKind::TooLarge, "ring has more than " + std::to_string(cap) + " elements");
    std::vector<IntVector> out;
    IntVector x(gens());
    for (;;) {
        out.push_back(x);
        std::size_t i = 0;
        while (i < x.size() && x[i] + 1 >= moduli_[i]) x[i++] = 0;
        if (i == x.size()) return out;
        x[i] += 1;
    }
}

/* ---- RingMap ---- */

RingMap::RingMap(FgRing source, FgRing target, IntMatrix images)
    : src_(std::move(source)), tgt_(std::move(target)), m_(std::move(images))
{
    const std::size_t n = src_.gens(), m = tgt_.gens();
    if (m_.rows() != m || m_.cols() != n)
        throw Error(ErrorKind::DimensionMismatch, "map matrix must be target gens x source gens");
    std::vector<IntVector> cols;
    for (std::size_t j = 0; j < n; ++j) cols.push_back(tgt_.normalize(m_.column(j)));
    for (std::size_t j = 0; j < n; ++j) {
        if (src_.moduli()[j] == 0) continue;
        IntVector c = cols[j];
        for (auto& x : c) x *= src_.moduli()[j];
        if (tgt_.normalize(c) != tgt_.zero())
            throw Error(ErrorKind::InvalidInput, "map is not well defined on generator " + std::to_string(j));
    }
    if (apply(src_.unit()) != tgt_.unit()) throw Error(ErrorKind::InvalidInput, "map does not preserve the unit");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            IntVector prod(n);
            for (std::size_t k = 0; k < n; ++k) prod[k] = src_.c(i, j, k);
            if (apply(prod) != tgt_.multiply(cols[i], cols[j]))
                throw Error(ErrorKind::InvalidInput, "map is not multiplicative on generators " + std::to_string(i) + ", " +
                                                         std::to_string(j));
        }
}

RingMap RingMap::identity(const FgRing& r) { return RingMap(r, r, IntMatrix::identity(r.gens())); }

IntVector RingMap::apply(const IntVector& x) const
{
    if (x.size() != src_.gens()) throw Error(ErrorKind::DimensionMismatch, "element has the wrong number of coordinates");
    return tgt_.normalize(m_ * x);
}

bool RingMap::is_surjective() const
{
    IntegerSolver solver(with_relations(m_, tgt_.moduli()));
    for (std::size_t k = 0; k < tgt_.gens(); ++k)
        if (tgt_.moduli()[k] != 1 && !solver.solve(unit_vector(tgt_.gens(), k))) return false;
    return true;
}

std::vector<IntVector> RingMap::kernel() const
{
    const std::size_t n = src_.gens();
    std::vector<IntVector> out;
    for (const auto& v : kernel_basis(with_relations(m_, tgt_.moduli()))) {
        IntVector x(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n));
        if (std::any_of(x.begin(), x.end(), [](const Int& a) { return a != 0; })) out.push_back(std::move(x));
    }
    for (std::size_t i = 0; i < n; ++i)
        if (src_.moduli()[i] != 0) {
            IntVector r(n);
            r[i] = src_.moduli()[i];
            out.push_back(std::move(r));
        }
    return out;
}

std::optional<IntVector> RingMap::preimage(const IntVector& y) const
{
    auto x = head(solve_integer(with_relations(m_, tgt_.moduli()), tgt_.normalize(y)), src_.gens());
    if (!x) return std::nullopt;
    return src_.normalize(*x);
}

RingMap quotient_map(const Order& o, const std::vector<IntVector>& ideal)
{
    const std::size_t n = o.rank();
    FgRing whole = FgRing::from_order(o);
    if (ideal.empty()) return RingMap::identity(whole);
    for (const auto& v : ideal)
        if (v.size() != n) throw Error(ErrorKind::DimensionMismatch, "ideal generator has the wrong length");
    SnfResult s = snf(IntMatrix::from_rows(n, ideal));
    IntMatrix w = unimodular_inverse(s.v);  // rows: new generators in order coordinates
    IntMatrix vt = s.v.transpose();          // order coordinates -> Smith coordinates
    IntVector d(n);
    for (std::size_t i = 0; i < n && i < s.s.rows(); ++i) d[i] = s.s(i, i);
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < n; ++i)
        if (d[i] != 1) keep.push_back(i);
    const std::size_t q = keep.size();
    auto project = [&](const IntVector& x) {
        IntVector y = vt * x, r(q);
        for (std::size_t t = 0; t < q; ++t) r[t] = y[keep[t]];
        return r;
    };
    std::vector<Int> table(q * q * q);
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b) {
            IntVector prod = project(o.multiply(w.row(keep[a]), w.row(keep[b])));
            for (std::size_t k = 0; k < q; ++k) table[(a * q + b) * q + k] = prod[k];
        }
    IntVector moduli(q);
    for (std::size_t t = 0; t < q; ++t) moduli[t] = d[keep[t]];
    FgRing target(std::move(moduli), std::move(table), project(o.unit()));
    IntMatrix proj(q, n);
    for (std::size_t t = 0; t < q; ++t)
        for (std::size_t x = 0; x < n; ++x) proj(t, x) = vt(keep[t], x);
    return RingMap(std::move(whole), std::move(target), std::move(proj));
}

IntMatrix finite_radical(const FgRing& a)
{
    const std::size_t n = a.gens();
    auto layers = prime_layers(a);
    if (layers.empty()) return IntMatrix::identity(n);  // zero ring
    IntMatrix j = layer_lattice(layers[0], n);
    for (std::size_t i = 1; i < layers.size(); ++i) j = lattice_intersection(j, layer_lattice(layers[i], n));
    return j;
}

/* ---- UnitLifter ---- */

UnitLifter::UnitLifter(RingMap f) : f_(std::move(f))
{
    if (!f_.is_surjective()) throw Error(ErrorKind::NotSurjective, "ring map is not surjective");
    preimage_ = std::make_shared<const IntegerSolver>(with_relations(f_.matrix(), f_.target().moduli()));
    if (f_.source().is_finite())
        init_finite();
    else
        init_split();
}

void UnitLifter::init_finite()
{
    const FgRing& a = f_.source();
    const std::size_t n = a.gens();
    finite_ = true;
    auto layers = prime_layers(a);
    if (layers.empty()) {
        j_gens_ = IntMatrix::identity(n);
    } else {
        j_gens_ = layer_lattice(layers[0], n);
        for (std::size_t i = 1; i < layers.size(); ++i) j_gens_ = lattice_intersection(j_gens_, layer_lattice(layers[i], n));
    }
    radical_preimage_ = std::make_shared<const IntegerSolver>(with_relations(f_.matrix() * j_gens_, f_.target().moduli()));

    // central idempotent prime by prime, glued with CRT multipliers
    auto kernel = f_.kernel();
    Int e_all = 1;
    for (const auto& l : layers) e_all *= l.p;
    IntVector e(n);
    for (const auto& l : layers) {
        std::vector<FpVector> kp;
        for (const auto& k : kernel) kp.push_back(l.reduce(k));
        IntVector ep = l.lift(ideal_identity(l, kp), n);
        Int rest = e_all / l.p, inv;
        mpz_class pp(l.p);
        mpz_invert(inv.get_mpz_t(), Int(rest % pp).get_mpz_t(), pp.get_mpz_t());
        Int mult = rest * inv;
        for (std::size_t i = 0; i < n; ++i) e[i] += mult * ep[i];
    }
    central_e_ = a.normalize(std::move(e));
}

void UnitLifter::init_split()
{
    const FgRing& r = f_.source();
    const FgRing& s = f_.target();
    const std::size_t n = r.gens(), m = s.gens();
    finite_ = false;
    auto kernel = f_.kernel();
    IntMatrix kmat = IntMatrix::from_columns(n, kernel);
    std::size_t rel_rank = 0;
    for (const auto& d : r.moduli())
        if (d != 0) ++rel_rank;
    if (kernel.empty() ? rel_rank != 0 : rank(kmat) != rel_rank)
        throw Error(ErrorKind::KernelInfinite, "kernel of the ring map is infinite");
    Int rel_cov = 1;
    for (const auto& d : r.moduli())
        if (d != 0) rel_cov *= d;
    n_ = kernel.empty() ? Int(1) : rel_cov / product_of(snf(kmat).invariant_factors());

    // additive section: each target generator needs a preimage of the same order
    for (std::size_t k = 0; k < m; ++k) {
        const Int& ek = s.moduli()[k];
        if (ek == 1) continue;
        IntMatrix top = hstack(with_relations(f_.matrix(), s.moduli()), IntMatrix(m, n));
        IntVector rhs = unit_vector(m, k);
        IntMatrix sys = top;
        if (ek != 0) {
            IntMatrix bottom(n, top.cols());
            for (std::size_t i = 0; i < n; ++i) bottom(i, i) = ek;
            for (std::size_t i = 0; i < n; ++i) bottom(i, top.cols() - n + i) = r.moduli()[i];
            sys = vstack(top, bottom);
            rhs.resize(m + n);
        }
        if (!solve_integer(sys, rhs)) throw Error(ErrorKind::NotSplit, "ring map is not split as a map of abelian groups");
    }

    if (n_ == 1) return;
    RingMap reduced(r.reduce_mod(n_), s.reduce_mod(n_), f_.matrix());
    reduced_ = std::make_shared<const UnitLifter>(std::move(reduced));
    IntMatrix nid = IntMatrix::identity(n) * n_;
    fiber_ = std::make_shared<const IntegerSolver>(hstack(kmat, nid));
    kernel_gens_ = std::move(kmat);
}

IntVector UnitLifter::lift(const IntVector& u) const
{
    const FgRing& b = f_.target();
    IntVector un = b.normalize(u);
    if (!b.is_unit(un)) throw Error(ErrorKind::NotUnit, "element is not a unit of the target");
    IntVector r = finite_ ? lift_finite(un) : lift_split(un);
    if (f_.apply(r) != un || !f_.source().is_unit(r))
        throw Error(ErrorKind::InvalidInput, "computed lift failed verification");
    return r;
}

IntVector UnitLifter::lift_finite(const IntVector& u) const
{
    const FgRing& a = f_.source();
    const std::size_t n = a.gens();
    auto pre = head(preimage_->solve(u), n);
    if (!pre) throw Error(ErrorKind::NotSurjective, "no preimage");
    IntVector x = a.normalize(*pre);
    // y = x (1 - e) + e is a unit modulo the radical and maps to u modulo J_B
    IntVector y = a.add(a.sub(x, a.multiply(x, central_e_)), central_e_);
    IntVector w = f_.target().sub(u, f_.apply(y));
    if (w == f_.target().zero()) return y;
    auto c = head(radical_preimage_->solve(w), j_gens_.cols());
    if (!c) throw Error(ErrorKind::InvalidInput, "radical correction not found");
    return a.add(y, j_gens_ * *c);
}

IntVector UnitLifter::lift_split(const IntVector& u) const
{
    const FgRing& r = f_.source();
    const std::size_t n = r.gens();
    auto pre = head(preimage_->solve(u), n);
    if (!pre) throw Error(ErrorKind::NotSurjective, "no preimage");
    IntVector r1 = r.normalize(*pre);
    if (n_ == 1) return r1;
    // glue (r0 in R/NR, u in S) through R = R/NR x_{S/NS} S
    IntVector r0 = reduced_->lift(reduced_->f_.target().normalize(u));
    IntVector diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = r1[i] - r0[i];
    auto sol = fiber_->solve(diff);
    if (!sol) throw Error(ErrorKind::InvalidInput, "fiber product gluing failed");
    const std::size_t kc = fiber_->cols() - n;
    IntVector c(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(kc));
    IntVector k = kernel_gens_ * c;
    return r.sub(r1, k);
}

IntVector lift_unit(const RingMap& f, const IntVector& u) { return UnitLifter(f).lift(u); }

}  // namespace k0lat
