#ifndef K0LAT_MODP_HPP
#define K0LAT_MODP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "k0lat/fp_algebra.hpp"

namespace k0lat {

/* An indecomposable direct summand of a module together with the basis (in
 * the coordinates of the ambient module) it occupies. */
struct Summand {
    FpModule module;
    std::vector<FpVector> basis;
    std::size_t end_dim = 0;
};

/* Krull–Schmidt decomposition into indecomposables with local endomorphism
 * algebras.  The summands together span the module.  The seed only changes
 * which bases are chosen. */
std::vector<Summand> decompose_summands(const FpModule& m, std::uint64_t seed);

bool is_indecomposable(const FpModule& m);

/* Invertible element of Hom(M, N) for indecomposable M, N, if any. */
std::optional<FpMatrix> indecomposables_isomorphic(const FpModule& m, const FpModule& n);

/* Invertible intertwiner M -> N (phi * rho_M = rho_N * phi), if one exists. */
std::optional<FpMatrix> modules_isomorphic(const FpModule& m, const FpModule& n);

/* Iso-invariants of a module used to order and pre-filter classes. */
std::vector<std::size_t> fingerprint(const FpModule& m, std::size_t end_dim);

/* Element of the split Grothendieck group with nonnegative coordinates:
 * indecomposable classes with multiplicities. */
class K0ClassFp {
public:
    struct Entry {
        FpModule module;
        std::size_t multiplicity;
        std::vector<std::size_t> fingerprint;
    };

    K0ClassFp() = default;

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t total_dim() const;

    /* Adds multiplicity copies of an indecomposable, merging with an
     * existing isomorphic entry. */
    void add(const FpModule& indecomposable, std::size_t multiplicity, std::size_t end_dim);

    /* Equality decided by explicit isomorphisms between entries. */
    friend bool operator==(const K0ClassFp& a, const K0ClassFp& b);
    friend bool operator!=(const K0ClassFp& a, const K0ClassFp& b) { return !(a == b); }
    friend K0ClassFp operator+(const K0ClassFp& a, const K0ClassFp& b);

private:
    std::vector<Entry> entries_;
};

K0ClassFp k0_class_fp(const FpModule& m, std::uint64_t seed);

struct IndecomposableMultiplicity {
    FpModule module;
    std::size_t multiplicity;
};

std::vector<IndecomposableMultiplicity> decompose(const FpModule& m, std::uint64_t seed);

}  // namespace k0lat

#endif
