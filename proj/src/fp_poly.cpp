#include "k0lat/fp_poly.hpp"

#include <utility>

namespace k0lat {

namespace {

inline FpElem mul(FpElem a, FpElem b, FpElem p)
{
    return static_cast<FpElem>((static_cast<std::uint64_t>(a) * b) % p);
}
inline FpElem add(FpElem a, FpElem b, FpElem p)
{
    std::uint64_t s = static_cast<std::uint64_t>(a) + b;
    return static_cast<FpElem>(s >= p ? s - p : s);
}
inline FpElem sub(FpElem a, FpElem b, FpElem p) { return a >= b ? a - b : a + (p - b); }

}  // namespace

FpPoly::FpPoly(FpElem p, std::vector<FpElem> coeffs) : p_(p), c_(std::move(coeffs))
{
    for (auto& v : c_) v %= p_;
    trim();
}

void FpPoly::trim()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FpPoly FpPoly::monic() const
{
    if (c_.empty()) return *this;
    FpElem inv = fp_inv(c_.back(), p_);
    FpPoly r = *this;
    for (auto& v : r.c_) v = mul(v, inv, p_);
    return r;
}

FpPoly FpPoly::derivative() const
{
    std::vector<FpElem> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(mul(c_[i], static_cast<FpElem>(i % p_), p_));
    return FpPoly(p_, std::move(d));
}

FpPoly operator+(const FpPoly& a, const FpPoly& b)
{
    std::vector<FpElem> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = add(a.coeff(i), b.coeff(i), a.p_);
    return FpPoly(a.p_, std::move(r));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b)
{
    std::vector<FpElem> r(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = sub(a.coeff(i), b.coeff(i), a.p_);
    return FpPoly(a.p_, std::move(r));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b)
{
    if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
    std::vector<FpElem> r(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            r[i + j] = add(r[i + j], mul(a.c_[i], b.c_[j], a.p_), a.p_);
    return FpPoly(a.p_, std::move(r));
}

void poly_divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r)
{
    if (b.is_zero()) throw Error(ErrorKind::InvalidInput, "polynomial division by zero");
    const FpElem p = a.prime();
    std::vector<FpElem> rem = a.coeffs();
    const int db = b.degree();
    const FpElem inv = fp_inv(b.lead(), p);
    std::vector<FpElem> quo(a.degree() >= db ? a.degree() - db + 1 : 0, 0);
    for (int k = static_cast<int>(rem.size()) - 1; k >= db; --k) {
        FpElem c = mul(rem[k], inv, p);
        if (c == 0) continue;
        quo[k - db] = c;
        for (int j = 0; j <= db; ++j) rem[k - db + j] = sub(rem[k - db + j], mul(c, b.coeff(j), p), p);
    }
    q = FpPoly(p, std::move(quo));
    r = FpPoly(p, std::move(rem));
}

FpPoly poly_mod(const FpPoly& a, const FpPoly& m)
{
    FpPoly q(a.prime()), r(a.prime());
    poly_divmod(a, m, q, r);
    return r;
}

FpPoly poly_gcd(FpPoly a, FpPoly b)
{
    while (!b.is_zero()) {
        FpPoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FpPoly poly_powmod(const FpPoly& a, const Int& e, const FpPoly& m)
{
    FpPoly result = poly_mod(FpPoly::constant(a.prime(), 1), m);
    FpPoly base = poly_mod(a, m);
    const std::size_t bits = e > 0 ? mpz_sizeinbase(e.get_mpz_t(), 2) : 0;
    for (std::size_t i = bits; i-- > 0;) {
        result = poly_mod(result * result, m);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = poly_mod(result * base, m);
    }
    return result;
}

FpPoly charpoly(const FpMatrix& a)
{
    const std::size_t n = a.rows();
    if (a.cols() != n) throw Error(ErrorKind::DimensionMismatch, "charpoly of non-square matrix");
    const FpElem p = a.prime();
    FpMatrix h = a;
    // upper Hessenberg form by similarity
    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t piv = n;
        for (std::size_t i = m; i < n; ++i)
            if (h(i, m - 1) != 0) {
                piv = i;
                break;
            }
        if (piv == n) continue;
        if (piv != m) {
            for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(m, j));
            for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, m));
        }
        FpElem inv = fp_inv(h(m, m - 1), p);
        for (std::size_t i = m + 1; i < n; ++i) {
            FpElem u = mul(h(i, m - 1), inv, p);
            if (u == 0) continue;
            for (std::size_t j = 0; j < n; ++j) h(i, j) = sub(h(i, j), mul(u, h(m, j), p), p);
            for (std::size_t r = 0; r < n; ++r) h(r, m) = add(h(r, m), mul(u, h(r, i), p), p);
        }
    }
    // p_k = charpoly of the leading k x k block
    std::vector<FpPoly> pk;
    pk.push_back(FpPoly::constant(p, 1));
    for (std::size_t k = 1; k <= n; ++k) {
        FpPoly cur = (FpPoly::x(p) - FpPoly::constant(p, h(k - 1, k - 1))) * pk[k - 1];
        FpElem t = 1 % p;
        for (std::size_t i = 1; i < k; ++i) {
            t = mul(t, h(k - i, k - i - 1), p);
            FpElem c = mul(h(k - i - 1, k - 1), t, p);
            if (c != 0) cur = cur - FpPoly::constant(p, c) * pk[k - i - 1];
        }
        pk.push_back(std::move(cur));
    }
    return pk[n];
}

FpMatrix poly_eval(const FpPoly& h, const FpMatrix& a)
{
    const FpElem p = a.prime();
    FpMatrix r(p, a.rows(), a.cols());
    for (int k = h.degree(); k >= 0; --k) {
        r = r * a;
        FpElem c = h.coeff(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < a.rows(); ++i) r(i, i) = add(r(i, i), c, p);
    }
    return r;
}

namespace {

FpPoly random_poly(FpElem p, int deg_below, std::mt19937_64& rng)
{
    std::vector<FpElem> c(static_cast<std::size_t>(deg_below));
    for (auto& v : c) v = static_cast<FpElem>(rng() % p);
    return FpPoly(p, std::move(c));
}

// f is monic, square-free, and a product of irreducibles of degree d.
void equal_degree_split(const FpPoly& f, int d, std::mt19937_64& rng, std::vector<FpPoly>& out)
{
    const FpElem p = f.prime();
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    Int q;
    mpz_ui_pow_ui(q.get_mpz_t(), p, static_cast<unsigned long>(d));
    for (;;) {
        FpPoly a = random_poly(p, f.degree(), rng);
        if (a.degree() < 1) continue;
        FpPoly g(p);
        if (p == 2) {
            FpPoly t = a, s = a;
            for (int j = 1; j < d; ++j) {
                s = poly_mod(s * s, f);
                t = t + s;
            }
            g = poly_gcd(f, t);
        } else {
            Int e = (q - 1) / 2;
            FpPoly b = poly_powmod(a, e, f) - FpPoly::constant(p, 1);
            g = poly_gcd(f, b);
        }
        if (g.degree() > 0 && g.degree() < f.degree()) {
            FpPoly quo(p), rem(p);
            poly_divmod(f, g, quo, rem);
            equal_degree_split(g, d, rng, out);
            equal_degree_split(quo.monic(), d, rng, out);
            return;
        }
    }
}

// f monic square-free
void squarefree_factors(FpPoly f, std::mt19937_64& rng, std::vector<FpPoly>& out)
{
    const FpElem p = f.prime();
    FpPoly xp = FpPoly::x(p);
    FpPoly h = xp;
    for (int d = 1; f.degree() >= 2 * d; ++d) {
        h = poly_powmod(h, Int(p), f);
        FpPoly g = poly_gcd(f, h - xp);
        if (g.degree() > 0) {
            equal_degree_split(g, d, rng, out);
            FpPoly quo(p), rem(p);
            poly_divmod(f, g, quo, rem);
            f = quo.monic();
            h = poly_mod(h, f);
        }
    }
    if (f.degree() > 0) out.push_back(f);
}

FpPoly pth_root(const FpPoly& f)
{
    const FpElem p = f.prime();
    std::vector<FpElem> c;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(f.coeffs()[i]);
    return FpPoly(p, std::move(c));
}

void collect_factors(FpPoly f, std::mt19937_64& rng, std::vector<FpPoly>& out)
{
    const FpElem p = f.prime();
    if (f.degree() <= 0) return;
    FpPoly df = f.derivative();
    if (df.is_zero()) {
        collect_factors(pth_root(f), rng, out);
        return;
    }
    FpPoly g = poly_gcd(f, df);
    FpPoly w(p), rem(p);
    poly_divmod(f, g, w, rem);
    w = w.monic();
    squarefree_factors(w, rng, out);
    // strip the factors of w from g, then recurse on what remains
    for (;;) {
        FpPoly c = poly_gcd(g, w);
        if (c.degree() <= 0) break;
        FpPoly q(p);
        poly_divmod(g, c, q, rem);
        g = q.monic();
    }
    collect_factors(g, rng, out);
}

}  // namespace

std::vector<FpPoly> irreducible_factors(const FpPoly& f, std::mt19937_64& rng)
{
    if (f.is_zero()) throw Error(ErrorKind::InvalidInput, "factoring the zero polynomial");
    std::vector<FpPoly> out;
    collect_factors(f.monic(), rng, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace k0lat
