#ifndef K0LAT_QUADFIELD_HPP
#define K0LAT_QUADFIELD_HPP

#include <optional>
#include <string>
#include <vector>

#include "k0lat/linalg.hpp"

namespace k0lat {

/* x + y sqrt(d) with rational x, y. */
struct QuadElement {
    Rat x;
    Rat y;
    friend bool operator==(const QuadElement& a, const QuadElement& b) { return a.x == b.x && a.y == b.y; }
};

class RealQuadraticField;

/* Fractional-free ideal of O_F: the lattice a Z + (b + c w) Z in the
 * integral basis (1, w), in HNF with c | a, c | b, 0 <= b < a. */
struct QuadIdeal {
    Int a = 1, b = 0, c = 1;
    Int norm() const { return a * c; }
    friend bool operator==(const QuadIdeal& p, const QuadIdeal& q) { return p.a == q.a && p.b == q.b && p.c == q.c; }
};

class RealQuadraticField {
public:
    /* Throws InvalidInput unless d > 1 is squarefree. */
    explicit RealQuadraticField(long d);

    long d() const noexcept { return d_; }
    /* True when (1 + sqrt d)/2 is integral, i.e. d = 1 mod 4. */
    bool half_integral_basis() const noexcept { return d_ % 4 == 1; }
    Int discriminant() const { return half_integral_basis() ? Int(d_) : Int(4 * d_); }

    QuadElement from_basis(const Int& u, const Int& v) const;  // u + v w
    /* Coordinates in (1, w), if integral. */
    std::optional<std::pair<Int, Int>> to_basis(const QuadElement& e) const;
    bool is_integral(const QuadElement& e) const { return to_basis(e).has_value(); }

    QuadElement add(const QuadElement& a, const QuadElement& b) const;
    QuadElement multiply(const QuadElement& a, const QuadElement& b) const;
    QuadElement conjugate(const QuadElement& a) const;
    Rat norm(const QuadElement& a) const;
    QuadElement inverse(const QuadElement& a) const;  // InvalidInput on zero
    int sign(const QuadElement& a) const;              // sign of the real number

    QuadIdeal principal(const QuadElement& g) const;  // g integral and nonzero
    /* O_F-ideal generated by the given integral elements. */
    QuadIdeal ideal(const std::vector<QuadElement>& gens) const;
    QuadIdeal multiply(const QuadIdeal& p, const QuadIdeal& q) const;
    QuadIdeal power(const QuadIdeal& p, unsigned e) const;
    bool contains(const QuadIdeal& p, const QuadElement& e) const;

private:
    long d_;
};

QuadElement fundamental_unit(const RealQuadraticField& f);

enum class Splitting { Split, Inert, Ramified };
std::string_view to_string(Splitting s);

struct PrimeIdeal {
    Int p;
    QuadIdeal ideal;
    QuadElement second_generator;  // ideal = (p, second_generator); zero when inert
    unsigned residue_degree = 1;
};

struct PrimeIdealFactor {
    Int p;
    Splitting type = Splitting::Inert;
    std::vector<PrimeIdeal> primes;  // two when split
};

/* Throws NotPrime. */
PrimeIdealFactor factor_rational_prime(const RealQuadraticField& f, const Int& p);

/* ord_rho of a nonzero element. */
long valuation(const RealQuadraticField& f, const PrimeIdeal& rho, const QuadElement& e);

/* Generator of prod rho_i^{e_i} when one exists.  Searches |u|, |v| <=
 * ceil(search_factor * sqrt(norm)); returns nullopt only when that box
 * covers a full unit fundamental domain, otherwise throws
 * SearchBoundExceeded. */
std::optional<QuadElement> is_principal(const RealQuadraticField& f, const std::vector<PrimeIdealFactor>& factors,
                                        const std::vector<long>& exponents, long search_factor = 10);

struct MDPrime {
    PrimeIdeal rho;
    long order_of_d = 0;
};

struct MDVerdict {
    std::vector<long> exponents;
    std::optional<QuadElement> generator;
};

struct MDReport {
    long d = 0;
    Int big_d;
    std::vector<MDPrime> primes;
    std::size_t count = 0;
    Int bound;
    std::vector<MDVerdict> verdicts;  // lexicographic in the exponents
};

MDReport md_orbit_count(const RealQuadraticField& f, const Int& big_d, long search_factor = 10);

std::string to_string(const QuadElement& e);

}  // namespace k0lat

#endif
