#ifndef K0LAT_FP_POLY_HPP
#define K0LAT_FP_POLY_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "k0lat/linalg.hpp"

namespace k0lat {

/* Polynomial over F_p, coefficients low degree first, no trailing zeros. */
class FpPoly {
public:
    explicit FpPoly(FpElem p) : p_(p) {}
    FpPoly(FpElem p, std::vector<FpElem> coeffs);

    static FpPoly x(FpElem p) { return FpPoly(p, {0, 1}); }
    static FpPoly constant(FpElem p, FpElem c) { return FpPoly(p, {c}); }

    FpElem prime() const noexcept { return p_; }
    /* -1 for the zero polynomial */
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    FpElem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    FpElem lead() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<FpElem>& coeffs() const noexcept { return c_; }

    FpPoly monic() const;
    FpPoly derivative() const;

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
    friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
    friend bool operator<(const FpPoly& a, const FpPoly& b)
    {
        if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
        return std::lexicographical_compare(a.c_.rbegin(), a.c_.rend(), b.c_.rbegin(), b.c_.rend());
    }

private:
    void trim();

    FpElem p_;
    std::vector<FpElem> c_;
};

void poly_divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r);
FpPoly poly_mod(const FpPoly& a, const FpPoly& m);
FpPoly poly_gcd(FpPoly a, FpPoly b);  // monic, or zero
FpPoly poly_powmod(const FpPoly& a, const Int& e, const FpPoly& m);

/* Characteristic polynomial det(xI - A), via Hessenberg reduction. */
FpPoly charpoly(const FpMatrix& a);

/* h(A) by Horner's rule. */
FpMatrix poly_eval(const FpPoly& h, const FpMatrix& a);

/* The distinct monic irreducible factors of f (deg f >= 0), sorted.  Uses
 * square-free reduction, distinct-degree splitting and Cantor–Zassenhaus; the
 * generator only affects running time, never the result. */
std::vector<FpPoly> irreducible_factors(const FpPoly& f, std::mt19937_64& rng);

}  // namespace k0lat

#endif
