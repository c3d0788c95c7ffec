#ifndef K0LAT_HODGELAT_HPP
#define K0LAT_HODGELAT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "k0lat/k0core.hpp"
#include "k0lat/linalg.hpp"
#include "k0lat/zorder.hpp"

namespace k0lat {

/* Pure weight lattice with rational constraint operators.  Morphisms are
 * integer matrices phi with phi A_i = B_i phi for the i-th constraints of
 * source and target; an object with fewer constraints behaves as if the
 * missing ones were zero. */
struct HodgeObject {
    int weight = 0;
    std::size_t rank = 0;
    std::vector<RatMatrix> constraints;
    std::optional<IntMatrix> gram;

    /* Throws DimensionMismatch or InvalidInput (asymmetric Gram). */
    void validate() const;
    friend bool operator==(const HodgeObject& a, const HodgeObject& b)
    {
        return a.weight == b.weight && a.rank == b.rank && a.constraints == b.constraints && a.gram == b.gram;
    }
};

HodgeObject hodge_object(int weight, std::size_t rank, std::vector<RatMatrix> constraints = {},
                         std::optional<IntMatrix> gram = std::nullopt);
/* Rank-1 object of weight 2k with no constraints, i.e. Z(-k). */
HodgeObject tate_object(int k);

/* The object on the sublattice spanned by the columns of s (nonsingular):
 * constraints s^-1 A s, Gram s^T G s.  The matrix s is a morphism from the
 * result into h. */
HodgeObject sublattice(const HodgeObject& h, const IntMatrix& s);
HodgeObject direct_sum(const HodgeObject& a, const HodgeObject& b);

HomLattice hs_hom(const HodgeObject& a, const HodgeObject& b);
IsoFromStable hs_iso_from_stable(const HodgeObject& x, const HodgeObject& y);
std::optional<RetractCertificate> hs_retract_certificate(const HodgeObject& x, const HodgeObject& y);

/* Explicit isomorphism a -> b if one is found: identical data, a unimodular
 * hom-lattice basis element, iso_from_stable when End = Z, then a bounded
 * coefficient search. */
std::optional<IntMatrix> hs_isomorphism(const HodgeObject& a, const HodgeObject& b, long search_bound = 3);

/* Direct sum of pure pieces indexed by weight; rank-0 pieces are dropped. */
class GradedHodgeObject {
public:
    GradedHodgeObject() = default;
    explicit GradedHodgeObject(const std::vector<HodgeObject>& pieces);

    const std::map<int, HodgeObject>& components() const noexcept { return parts_; }
    std::size_t rank_at(int weight) const;
    void add(const HodgeObject& h);

    friend bool operator==(const GradedHodgeObject& a, const GradedHodgeObject& b) { return a.parts_ == b.parts_; }

private:
    std::map<int, HodgeObject> parts_;
};

GradedHodgeObject direct_sum(const GradedHodgeObject& a, const GradedHodgeObject& b);
GradedHodgeObject tate_twist(const GradedHodgeObject& g, int k);
HodgeObject tate_twist(const HodgeObject& h, int k);

enum class WeightVerdict { Isomorphic, NotIsomorphic, Undetermined };
std::string_view to_string(WeightVerdict v);

struct WeightCheck {
    int weight = 0;
    WeightVerdict verdict = WeightVerdict::Undetermined;
    std::optional<IntMatrix> iso;
    std::string reason;
};

struct GradedIsoCheck {
    bool isomorphic = false;
    std::vector<WeightCheck> weights;
    std::optional<int> failing_weight;
};

GradedIsoCheck graded_isomorphism(const GradedHodgeObject& a, const GradedHodgeObject& b, long search_bound = 3);

/* Formal sum of graded objects times powers of L = [A^1]. */
struct ClassTerm {
    long coefficient = 1;
    GradedHodgeObject object;
    int l_exponent = 0;
};

struct ClassPiece {
    HodgeObject object;
    std::size_t multiplicity = 1;
};

/* Reduced formal difference: positive and negative pure pieces, ordered by
 * weight, with no isomorphic pair across the two sides found. */
struct HdgClass {
    std::vector<ClassPiece> positive;
    std::vector<ClassPiece> negative;
    bool empty() const { return positive.empty() && negative.empty(); }
};

struct Cancellation {
    int weight = 0;
    IntMatrix iso;  // positive piece -> negative piece
};

struct ClassReduction {
    HdgClass reduced;
    std::vector<Cancellation> cancellations;
};

ClassReduction hdg_class_reduce(const std::vector<ClassTerm>& expr, long search_bound = 3);
/* Class equality certified by a reduction of a - b to zero. */
bool classes_equal(const std::vector<ClassTerm>& a, const std::vector<ClassTerm>& b, long search_bound = 3);

struct BlowupReport {
    bool verified = false;
    GradedIsoCheck exceptional;  // E vs Z + Z(-1) + ... + Z(1-c)
    GradedIsoCheck total;        // X vs Y + Z(-1) + ... + Z(1-c)
    bool class_identity = false;  // Hdg[X] + Hdg[Z] = Hdg[Y] + Hdg[E]
    std::optional<int> failing_weight;
};

BlowupReport verify_blowup_relation(const GradedHodgeObject& x, const GradedHodgeObject& y, const GradedHodgeObject& z,
                                    const GradedHodgeObject& e, int codim, long search_bound = 3);

struct K3Model {
    HodgeObject t;  // weight 2 with Gram
    std::size_t ns_rank = 0;
    Int discriminant;  // det of the Gram of t
};

/* Validates that t carries a nonsingular Gram and fills the discriminant. */
K3Model k3_model(HodgeObject t, std::size_t ns_rank);

struct BrauerClass {
    Int n = 1;
    IntVector alpha;
};

struct BrauerKernel {
    HodgeObject object;
    IntMatrix basis;  // columns in T coordinates
    Int index;
    Int discriminant;
};

/* ker(alpha: T -> Z/n) with inherited constraints and Gram. */
BrauerKernel brauer_kernel(const K3Model& k, const BrauerClass& a);

struct ScalarTest {
    std::optional<Int> k;  // S = k T
    Int index;
    bool end_trivial = false;
};

ScalarTest scalar_sublattice_test(const HodgeObject& t, const IntMatrix& s);

struct PairingRepresentation {
    RatMatrix a;  // beta(x, y) = <a x, y>
    bool in_commutant = false;
};

PairingRepresentation represent_pairing(const HodgeObject& t, const IntMatrix& beta);

}  // namespace k0lat

#endif
