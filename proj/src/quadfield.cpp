#include "k0lat/quadfield.hpp"

#include <stdexcept>
#include <tuple>

#include "k0lat/error.hpp"

namespace k0lat {

namespace {

constexpr long kMaxExponent = 16;
constexpr long kMaxRootSearch = 100000000;

Int isqrt_floor(const Int& n)
{
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

Int isqrt_ceil(const Int& n)
{
    Int r = isqrt_floor(n);
    if (r * r < n) ++r;
    return r;
}

Int ceil_of(const Rat& q)
{
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

long p_adic_order(Int n, const Int& p)
{
    long k = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

bool squarefree(long d)
{
    for (long q = 2; q * q <= d; ++q)
        if (d % (q * q) == 0) return false;
    return true;
}

// norm of u + v w as an integer
Int basis_norm(const RealQuadraticField& f, const Int& u, const Int& v)
{
    if (f.half_integral_basis()) return u * u + u * v - Int((f.d() - 1) / 4) * v * v;
    return u * u - Int(f.d()) * v * v;
}

const QuadIdeal* conjugate_prime(const PrimeIdealFactor& fac, std::size_t i)
{
    switch (fac.type) {
    case Splitting::Split: return &fac.primes[1 - i].ideal;
    case Splitting::Ramified: return &fac.primes[i].ideal;
    case Splitting::Inert: return nullptr;  // rho^-1 = (1/p)
    }
    return nullptr;
}

}  // namespace

RealQuadraticField::RealQuadraticField(long d) : d_(d)
{
    if (d <= 1 || !squarefree(d)) throw Error(ErrorKind::InvalidInput, "d must be a squarefree integer > 1, got " + std::to_string(d));
}

QuadElement RealQuadraticField::from_basis(const Int& u, const Int& v) const
{
    if (half_integral_basis()) return {Rat(u) + Rat(v) / 2, Rat(v) / 2};
    return {Rat(u), Rat(v)};
}

std::optional<std::pair<Int, Int>> RealQuadraticField::to_basis(const QuadElement& e) const
{
    if (half_integral_basis()) {
        Rat v = e.y * 2, u = e.x - e.y;
        if (v.get_den() != 1 || u.get_den() != 1) return std::nullopt;
        return std::make_pair(Int(u.get_num()), Int(v.get_num()));
    }
    if (e.x.get_den() != 1 || e.y.get_den() != 1) return std::nullopt;
    return std::make_pair(Int(e.x.get_num()), Int(e.y.get_num()));
}

QuadElement RealQuadraticField::add(const QuadElement& a, const QuadElement& b) const { return {a.x + b.x, a.y + b.y}; }

QuadElement RealQuadraticField::multiply(const QuadElement& a, const QuadElement& b) const
{
    return {a.x * b.x + Rat(d_) * a.y * b.y, a.x * b.y + a.y * b.x};
}

QuadElement RealQuadraticField::conjugate(const QuadElement& a) const { return {a.x, -a.y}; }

Rat RealQuadraticField::norm(const QuadElement& a) const { return a.x * a.x - Rat(d_) * a.y * a.y; }

QuadElement RealQuadraticField::inverse(const QuadElement& a) const
{
    Rat n = norm(a);
    if (n == 0) throw Error(ErrorKind::InvalidInput, "zero has no inverse");
    return {a.x / n, -a.y / n};
}

int RealQuadraticField::sign(const QuadElement& a) const
{
    // sign of x + y sqrt(d) compared through squares
    int sx = sgn(a.x), sy = sgn(a.y);
    if (sx == 0) return sy;
    if (sy == 0 || sx == sy) return sx;
    Rat lhs = a.x * a.x, rhs = Rat(d_) * a.y * a.y;
    return lhs > rhs ? sx : sy;
}

QuadIdeal RealQuadraticField::ideal(const std::vector<QuadElement>& gens) const
{
    const QuadElement w = from_basis(0, 1);
    std::vector<IntVector> rows;
    for (const auto& g : gens)
        for (const auto& h : {g, multiply(g, w)}) {
            auto c = to_basis(h);
            if (!c) throw Error(ErrorKind::InvalidInput, "ideal generator is not integral");
            rows.push_back({c->second, c->first});
        }
    IntMatrix m(rows.size(), 2);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        m(i, 0) = rows[i][0];
        m(i, 1) = rows[i][1];
    }
    IntMatrix h = hnf_rows(m);
    if (h.rows() != 2) throw Error(ErrorKind::InvalidInput, "ideal is zero");
    return QuadIdeal{h(1, 1), h(0, 1), h(0, 0)};
}

QuadIdeal RealQuadraticField::principal(const QuadElement& g) const { return ideal({g}); }

QuadIdeal RealQuadraticField::multiply(const QuadIdeal& p, const QuadIdeal& q) const
{
    const QuadElement pb[2] = {from_basis(p.a, 0), from_basis(p.b, p.c)};
    const QuadElement qb[2] = {from_basis(q.a, 0), from_basis(q.b, q.c)};
    std::vector<QuadElement> gens;
    for (const auto& x : pb)
        for (const auto& y : qb) gens.push_back(multiply(x, y));
    return ideal(gens);
}

QuadIdeal RealQuadraticField::power(const QuadIdeal& p, unsigned e) const
{
    QuadIdeal r;
    for (unsigned i = 0; i < e; ++i) r = multiply(r, p);
    return r;
}

bool RealQuadraticField::contains(const QuadIdeal& p, const QuadElement& e) const
{
    auto c = to_basis(e);
    if (!c) return false;
    const auto& [u, v] = *c;
    if (v % p.c != 0) return false;
    return (u - p.b * (v / p.c)) % p.a == 0;
}

QuadElement fundamental_unit(const RealQuadraticField& f)
{
    // continued fraction of w = (P + sqrt d)/Q; the first convergent p/q with
    // N(p - q w) = +-1 gives the least unit > 1 as |conjugate(p - q w)|
    const Int d(f.d()), s = isqrt_floor(d);
    Int P = f.half_integral_basis() ? 1 : 0, Q = f.half_integral_basis() ? 2 : 1;
    Int p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
    for (;;) {
        Int a;
        if (Q > 0) {
            mpz_fdiv_q(a.get_mpz_t(), Int(P + s).get_mpz_t(), Q.get_mpz_t());
        } else {
            Int t;
            mpz_fdiv_q(t.get_mpz_t(), Int(P + s).get_mpz_t(), Int(-Q).get_mpz_t());
            a = -(t + 1);
        }
        Int p = a * p_prev + p_prev2, q = a * q_prev + q_prev2;
        p_prev2 = p_prev;
        p_prev = p;
        q_prev2 = q_prev;
        q_prev = q;
        if (q > 0) {
            Int n = basis_norm(f, p, -q);
            if (n == 1 || n == -1) {
                QuadElement e = f.conjugate(f.from_basis(p, -q));
                return {abs(e.x), abs(e.y)};
            }
        }
        P = a * Q - P;
        Q = (d - P * P) / Q;
    }
}

std::string_view to_string(Splitting s)
{
    switch (s) {
    case Splitting::Split: return "split";
    case Splitting::Inert: return "inert";
    case Splitting::Ramified: return "ramified";
    }
    return "inert";
}

PrimeIdealFactor factor_rational_prime(const RealQuadraticField& f, const Int& p)
{
    if (p < 2 || !is_probable_prime(p)) throw Error(ErrorKind::NotPrime, to_string(p) + " is not prime");
    if (p > kMaxRootSearch) throw Error(ErrorKind::TooLarge, "prime " + to_string(p) + " is beyond the root search");
    const long pl = p.get_si();
    // roots of the minimal polynomial of w mod p
    const long k = f.half_integral_basis() ? (f.d() - 1) / 4 : 0;
    std::vector<long> roots;
    for (long r = 0; r < pl; ++r) {
        Int val = Int(r) * r - (f.half_integral_basis() ? r + k : f.d());
        if (val % p == 0) roots.push_back(r);
    }
    PrimeIdealFactor out;
    out.p = p;
    const QuadElement pe = f.from_basis(p, 0);
    if (f.discriminant() % p == 0) out.type = Splitting::Ramified;
    else out.type = roots.empty() ? Splitting::Inert : Splitting::Split;

    if (out.type == Splitting::Inert) {
        out.primes.push_back({p, f.ideal({pe}), QuadElement{}, 2});
    } else {
        for (long r : roots) {
            QuadElement g = f.from_basis(Int(-r), 1);
            out.primes.push_back({p, f.ideal({pe, g}), g, 1});
            if (out.type == Splitting::Ramified) break;
        }
    }
    // norms multiply to p^2 and the primes multiply back to (p)
    const QuadIdeal pp = f.ideal({pe});
    QuadIdeal prod;
    if (out.type == Splitting::Split) prod = f.multiply(out.primes[0].ideal, out.primes[1].ideal);
    else if (out.type == Splitting::Ramified) prod = f.power(out.primes[0].ideal, 2);
    else prod = out.primes[0].ideal;
    if (!(prod == pp)) throw std::logic_error("prime factorization does not multiply back to (p)");
    return out;
}

long valuation(const RealQuadraticField& f, const PrimeIdeal& rho, const QuadElement& e)
{
    if (e.x == 0 && e.y == 0) throw Error(ErrorKind::InvalidInput, "valuation of zero");
    Int m = lcm(Int(e.x.get_den()), Int(e.y.get_den()));
    QuadElement beta{e.x * Rat(m), e.y * Rat(m)};
    long ord_m = p_adic_order(m, rho.p);
    if (rho.residue_degree == 1 && f.discriminant() % rho.p == 0) ord_m *= 2;
    long k = 0;
    QuadIdeal pk = rho.ideal;
    while (f.contains(pk, beta)) {
        ++k;
        pk = f.multiply(pk, rho.ideal);
    }
    return k - ord_m;
}

std::optional<QuadElement> is_principal(const RealQuadraticField& f, const std::vector<PrimeIdealFactor>& factors,
                                        const std::vector<long>& exponents, long search_factor)
{
    if (search_factor < 1) throw Error(ErrorKind::InvalidInput, "search factor must be positive");
    std::vector<std::pair<const PrimeIdeal*, long>> flat;
    std::size_t idx = 0;
    QuadIdeal j;
    Int m = 1;
    Rat expected_norm = 1;
    for (const auto& fac : factors)
        for (std::size_t i = 0; i < fac.primes.size(); ++i) {
            if (idx >= exponents.size()) throw Error(ErrorKind::DimensionMismatch, "too few exponents");
            long e = exponents[idx++];
            if (e > kMaxExponent || e < -kMaxExponent) throw Error(ErrorKind::InvalidInput, "exponent out of range");
            const PrimeIdeal& rho = fac.primes[i];
            flat.emplace_back(&rho, e);
            const Int nr = rho.ideal.norm();
            if (e >= 0) {
                j = f.multiply(j, f.power(rho.ideal, static_cast<unsigned>(e)));
                for (long t = 0; t < e; ++t) expected_norm *= Rat(nr);
            } else {
                // rho^-1 = conj(rho) / p
                if (const QuadIdeal* c = conjugate_prime(fac, i)) j = f.multiply(j, f.power(*c, static_cast<unsigned>(-e)));
                for (long t = 0; t < -e; ++t) {
                    m *= fac.p;
                    expected_norm /= Rat(nr);
                }
            }
        }
    if (idx != exponents.size()) throw Error(ErrorKind::DimensionMismatch, "too many exponents");

    const Int n = j.norm();
    const Int box = isqrt_ceil(Int(search_factor) * search_factor * n);
    std::optional<std::pair<Int, Int>> best;
    auto key = [](const Int& u, const Int& v) {
        Int au = abs(u), av = abs(v);
        return std::make_tuple(std::max(au, av), av, v, u);
    };
    // v runs over multiples of c, u over b v / c + a Z
    Int v0 = -box;
    mpz_cdiv_q(v0.get_mpz_t(), v0.get_mpz_t(), j.c.get_mpz_t());
    for (Int vc = v0; vc * j.c <= box; ++vc) {
        const Int v = vc * j.c;
        const Int base = j.b * vc;
        Int t0;
        Int lo = -box - base;
        mpz_cdiv_q(t0.get_mpz_t(), lo.get_mpz_t(), j.a.get_mpz_t());
        for (Int t = t0; base + t * j.a <= box; ++t) {
            const Int u = base + t * j.a;
            if (abs(basis_norm(f, u, v)) != n) continue;
            if (!best || key(u, v) < key(best->first, best->second)) best = std::make_pair(u, v);
        }
    }
    if (!best) {
        // a generator, if any, has a unit multiple with |g|, |conj g| <= sqrt(n eps)
        QuadElement eps = fundamental_unit(f);
        Int eps_up = ceil_of(eps.x + eps.y * Rat(isqrt_floor(Int(f.d())) + 1));
        Int c = isqrt_ceil(n * eps_up);
        Int needed = f.half_integral_basis() ? Int((3 * c + 1) / 2) : c;
        if (box < needed)
            throw Error(ErrorKind::SearchBoundExceeded,
                        "no generator with coordinates up to " + to_string(box) + "; completeness needs " + to_string(needed));
        return std::nullopt;
    }
    QuadElement g = f.from_basis(best->first, best->second);
    g = {g.x / Rat(m), g.y / Rat(m)};
    if (f.sign(g) < 0) g = {-g.x, -g.y};
    for (const auto& [rho, e] : flat)
        if (valuation(f, *rho, g) != e) throw std::logic_error("generator valuation mismatch");
    if (abs(f.norm(g)) != expected_norm) throw std::logic_error("generator norm mismatch");
    return g;
}

MDReport md_orbit_count(const RealQuadraticField& f, const Int& big_d, long search_factor)
{
    if (big_d < 1) throw Error(ErrorKind::InvalidInput, "D must be positive");
    MDReport r;
    r.d = f.d();
    r.big_d = big_d;
    r.bound = 1;
    std::vector<PrimeIdealFactor> factors;
    for (const Int& p : prime_divisors(big_d)) {
        factors.push_back(factor_rational_prime(f, p));
        const auto& fac = factors.back();
        long v = p_adic_order(big_d, p);
        for (const auto& rho : fac.primes) {
            long ord = fac.type == Splitting::Ramified ? 2 * v : v;
            r.primes.push_back({rho, ord});
            r.bound *= 2 * ord + 1;
        }
    }
    std::vector<long> e;
    for (const auto& mp : r.primes) e.push_back(-mp.order_of_d);
    for (;;) {
        MDVerdict v{e, is_principal(f, factors, e, search_factor)};
        if (v.generator) ++r.count;
        r.verdicts.push_back(std::move(v));
        std::size_t i = e.size();
        while (i > 0 && e[i - 1] == r.primes[i - 1].order_of_d) {
            e[i - 1] = -r.primes[i - 1].order_of_d;
            --i;
        }
        if (i == 0) break;
        ++e[i - 1];
    }
    if (Int(static_cast<unsigned long>(r.count)) > r.bound) throw std::logic_error("orbit count exceeds the bound");
    return r;
}

std::string to_string(const QuadElement& e) { return e.x.get_str() + " + " + e.y.get_str() + "*sqrt(d)"; }

}  // namespace k0lat
