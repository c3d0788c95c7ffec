#include "k0lat/hodgelat.hpp"

#include <algorithm>

#include "k0lat/error.hpp"

namespace k0lat {

namespace {

constexpr std::size_t kSearchBudget = 200000;

/* Constraint i of h, or zero when h has fewer constraints. */
RatMatrix constraint_or_zero(const HodgeObject& h, std::size_t i)
{
    return i < h.constraints.size() ? h.constraints[i] : RatMatrix(h.rank, h.rank);
}

Int lcm_of_denominators(const RatMatrix& m, Int acc)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) acc = lcm(acc, Int(m(i, j).get_den()));
    return acc;
}

bool same_structure(const HodgeObject& a, const HodgeObject& b)
{
    if (a.weight != b.weight || a.rank != b.rank) return false;
    const std::size_t n = std::max(a.constraints.size(), b.constraints.size());
    for (std::size_t i = 0; i < n; ++i)
        if (constraint_or_zero(a, i) != constraint_or_zero(b, i)) return false;
    return true;
}

bool commutes(const RatMatrix& a, const std::vector<RatMatrix>& ops)
{
    return std::all_of(ops.begin(), ops.end(), [&](const RatMatrix& c) { return a * c == c * a; });
}

WeightCheck compare_pieces(int weight, const HodgeObject* a, const HodgeObject* b, long bound)
{
    WeightCheck w;
    w.weight = weight;
    const std::size_t ra = a ? a->rank : 0, rb = b ? b->rank : 0;
    if (ra != rb) {
        w.verdict = WeightVerdict::NotIsomorphic;
        w.reason = "ranks " + std::to_string(ra) + " and " + std::to_string(rb);
        return w;
    }
    if (ra == 0) {
        w.verdict = WeightVerdict::Isomorphic;
        w.iso = IntMatrix(0, 0);
        return w;
    }
    if (auto iso = hs_isomorphism(*a, *b, bound)) {
        w.verdict = WeightVerdict::Isomorphic;
        w.iso = std::move(iso);
        return w;
    }
    if (hs_hom(*a, *b).rank() == 0) {
        w.verdict = WeightVerdict::NotIsomorphic;
        w.reason = "no nonzero morphism";
        return w;
    }
    IsoFromStable s = hs_iso_from_stable(*a, *b);
    if (s.verdict == IsoVerdict::NoIso) {
        w.verdict = WeightVerdict::NotIsomorphic;
        w.reason = s.reason;
        return w;
    }
    w.reason = "no unimodular morphism found";
    return w;
}

void add_piece(std::vector<ClassPiece>& side, const HodgeObject& h, std::size_t mult)
{
    for (auto& p : side)
        if (p.object == h) {
            p.multiplicity += mult;
            return;
        }
    side.push_back({h, mult});
}

HodgeObject merged(const std::vector<ClassPiece>& side, int weight)
{
    HodgeObject out = hodge_object(weight, 0);
    for (const auto& p : side)
        if (p.object.weight == weight)
            for (std::size_t i = 0; i < p.multiplicity; ++i) out = direct_sum(out, p.object);
    return out;
}

}  // namespace

void HodgeObject::validate() const
{
    for (const auto& c : constraints)
        if (c.rows() != rank || c.cols() != rank)
            throw Error(ErrorKind::DimensionMismatch, "constraint operator is not " + std::to_string(rank) + "x" + std::to_string(rank));
    if (gram) {
        if (gram->rows() != rank || gram->cols() != rank) throw Error(ErrorKind::DimensionMismatch, "Gram matrix has wrong size");
        if (*gram != gram->transpose()) throw Error(ErrorKind::InvalidInput, "Gram matrix is not symmetric");
    }
}

HodgeObject hodge_object(int weight, std::size_t rank, std::vector<RatMatrix> constraints, std::optional<IntMatrix> gram)
{
    HodgeObject h{weight, rank, std::move(constraints), std::move(gram)};
    h.validate();
    return h;
}

HodgeObject tate_object(int k) { return hodge_object(2 * k, 1); }

HodgeObject sublattice(const HodgeObject& h, const IntMatrix& s)
{
    if (s.rows() != h.rank || s.cols() != h.rank) throw Error(ErrorKind::DimensionMismatch, "sublattice basis has wrong size");
    RatMatrix sq = to_rational(s);
    auto inv = inverse(sq);
    if (!inv) throw Error(ErrorKind::NotFiniteIndex, "sublattice basis is singular");
    HodgeObject out{h.weight, h.rank, {}, std::nullopt};
    for (const auto& c : h.constraints) out.constraints.push_back(*inv * c * sq);
    if (h.gram) out.gram = s.transpose() * *h.gram * s;
    return out;
}

HodgeObject direct_sum(const HodgeObject& a, const HodgeObject& b)
{
    if (a.weight != b.weight) throw Error(ErrorKind::WeightMismatch, "direct sum of different weights");
    HodgeObject out{a.weight, a.rank + b.rank, {}, std::nullopt};
    const std::size_t n = std::max(a.constraints.size(), b.constraints.size());
    for (std::size_t i = 0; i < n; ++i) out.constraints.push_back(block_diagonal({constraint_or_zero(a, i), constraint_or_zero(b, i)}));
    if (a.gram && b.gram) out.gram = block_diagonal({*a.gram, *b.gram});
    else if (a.gram && b.rank == 0) out.gram = a.gram;
    else if (b.gram && a.rank == 0) out.gram = b.gram;
    return out;
}

HomLattice hs_hom(const HodgeObject& a, const HodgeObject& b)
{
    if (a.weight != b.weight)
        throw Error(ErrorKind::WeightMismatch, "weights " + std::to_string(a.weight) + " and " + std::to_string(b.weight));
    a.validate();
    b.validate();
    const std::size_t n = std::max(a.constraints.size(), b.constraints.size());
    std::vector<IntMatrix> src, dst;
    for (std::size_t i = 0; i < n; ++i) {
        RatMatrix ca = constraint_or_zero(a, i), cb = constraint_or_zero(b, i);
        Int scale = lcm_of_denominators(cb, lcm_of_denominators(ca, Int(1)));
        src.push_back(to_integer(ca * Rat(scale)));
        dst.push_back(to_integer(cb * Rat(scale)));
    }
    return intertwiners(a.rank, b.rank, src, dst);
}

IsoFromStable hs_iso_from_stable(const HodgeObject& x, const HodgeObject& y)
{
    return iso_from_stable(x.rank, y.rank, hs_hom(x, x), hs_hom(x, y), hs_hom(y, x));
}

std::optional<RetractCertificate> hs_retract_certificate(const HodgeObject& x, const HodgeObject& y)
{
    return retract_certificate(x.rank, hs_hom(x, y), hs_hom(y, x));
}

std::optional<IntMatrix> hs_isomorphism(const HodgeObject& a, const HodgeObject& b, long search_bound)
{
    if (a.weight != b.weight || a.rank != b.rank) return std::nullopt;
    if (same_structure(a, b)) return IntMatrix::identity(a.rank);
    HomLattice h = hs_hom(a, b);
    if (h.rank() == 0) return std::nullopt;
    for (const auto& m : h.basis)
        if (abs(determinant(m)) == 1) return m;
    if (hs_hom(a, a).rank() == 1) {
        IsoFromStable s = hs_iso_from_stable(a, b);
        if (s.iso) return s.iso;
        if (s.verdict == IsoVerdict::NoIso) return std::nullopt;
    }
    return search_unimodular(h, search_bound, kSearchBudget);
}

GradedHodgeObject::GradedHodgeObject(const std::vector<HodgeObject>& pieces)
{
    for (const auto& p : pieces) add(p);
}

std::size_t GradedHodgeObject::rank_at(int weight) const
{
    auto it = parts_.find(weight);
    return it == parts_.end() ? 0 : it->second.rank;
}

void GradedHodgeObject::add(const HodgeObject& h)
{
    h.validate();
    if (h.rank == 0) return;
    auto it = parts_.find(h.weight);
    if (it == parts_.end()) parts_.emplace(h.weight, h);
    else it->second = direct_sum(it->second, h);
}

GradedHodgeObject direct_sum(const GradedHodgeObject& a, const GradedHodgeObject& b)
{
    GradedHodgeObject out = a;
    for (const auto& [w, h] : b.components()) out.add(h);
    return out;
}

HodgeObject tate_twist(const HodgeObject& h, int k)
{
    HodgeObject out = h;
    out.weight += 2 * k;
    return out;
}

GradedHodgeObject tate_twist(const GradedHodgeObject& g, int k)
{
    GradedHodgeObject out;
    for (const auto& [w, h] : g.components()) out.add(tate_twist(h, k));
    return out;
}

std::string_view to_string(WeightVerdict v)
{
    switch (v) {
    case WeightVerdict::Isomorphic: return "isomorphic";
    case WeightVerdict::NotIsomorphic: return "not_isomorphic";
    case WeightVerdict::Undetermined: return "undetermined";
    }
    return "undetermined";
}

GradedIsoCheck graded_isomorphism(const GradedHodgeObject& a, const GradedHodgeObject& b, long search_bound)
{
    std::vector<int> weights;
    for (const auto& [w, h] : a.components()) weights.push_back(w);
    for (const auto& [w, h] : b.components())
        if (!a.components().count(w)) weights.push_back(w);
    std::sort(weights.begin(), weights.end());

    GradedIsoCheck out;
    out.isomorphic = true;
    for (int w : weights) {
        auto ia = a.components().find(w), ib = b.components().find(w);
        const HodgeObject* pa = ia == a.components().end() ? nullptr : &ia->second;
        const HodgeObject* pb = ib == b.components().end() ? nullptr : &ib->second;
        WeightCheck c = compare_pieces(w, pa, pb, search_bound);
        if (c.verdict != WeightVerdict::Isomorphic) {
            out.isomorphic = false;
            if (!out.failing_weight) out.failing_weight = w;
        }
        out.weights.push_back(std::move(c));
    }
    return out;
}

ClassReduction hdg_class_reduce(const std::vector<ClassTerm>& expr, long search_bound)
{
    ClassReduction out;
    auto& pos = out.reduced.positive;
    auto& neg = out.reduced.negative;
    for (const auto& t : expr) {
        if (t.coefficient == 0) continue;
        auto& side = t.coefficient > 0 ? pos : neg;
        const auto mult = static_cast<std::size_t>(t.coefficient > 0 ? t.coefficient : -t.coefficient);
        GradedHodgeObject twisted = tate_twist(t.object, t.l_exponent);
        for (const auto& [w, h] : twisted.components()) add_piece(side, h, mult);
    }

    // summand against summand
    for (auto& p : pos)
        for (auto& n : neg) {
            if (p.multiplicity == 0 || n.multiplicity == 0 || p.object.weight != n.object.weight) continue;
            auto iso = hs_isomorphism(p.object, n.object, search_bound);
            if (!iso) continue;
            const std::size_t k = std::min(p.multiplicity, n.multiplicity);
            p.multiplicity -= k;
            n.multiplicity -= k;
            out.cancellations.push_back({p.object.weight, *iso});
        }
    auto prune = [](std::vector<ClassPiece>& side) {
        side.erase(std::remove_if(side.begin(), side.end(), [](const ClassPiece& c) { return c.multiplicity == 0; }), side.end());
    };
    prune(pos);
    prune(neg);

    // whole weight against whole weight
    std::vector<int> weights;
    for (const auto& p : pos) weights.push_back(p.object.weight);
    std::sort(weights.begin(), weights.end());
    weights.erase(std::unique(weights.begin(), weights.end()), weights.end());
    for (int w : weights) {
        HodgeObject a = merged(pos, w), b = merged(neg, w);
        if (b.rank == 0) continue;
        auto iso = hs_isomorphism(a, b, search_bound);
        if (!iso) continue;
        out.cancellations.push_back({w, *iso});
        for (auto* side : {&pos, &neg})
            for (auto& c : *side)
                if (c.object.weight == w) c.multiplicity = 0;
    }
    prune(pos);
    prune(neg);

    auto by_weight = [](const ClassPiece& x, const ClassPiece& y) { return x.object.weight < y.object.weight; };
    std::stable_sort(pos.begin(), pos.end(), by_weight);
    std::stable_sort(neg.begin(), neg.end(), by_weight);
    return out;
}

bool classes_equal(const std::vector<ClassTerm>& a, const std::vector<ClassTerm>& b, long search_bound)
{
    std::vector<ClassTerm> diff = a;
    for (auto t : b) {
        t.coefficient = -t.coefficient;
        diff.push_back(std::move(t));
    }
    return hdg_class_reduce(diff, search_bound).reduced.empty();
}

BlowupReport verify_blowup_relation(const GradedHodgeObject& x, const GradedHodgeObject& y, const GradedHodgeObject& z,
                                    const GradedHodgeObject& e, int codim, long search_bound)
{
    if (codim < 1) throw Error(ErrorKind::InvalidInput, "codimension must be at least 1");
    GradedHodgeObject e_model = z, x_model = y;
    for (int k = 1; k < codim; ++k) {
        e_model = direct_sum(e_model, tate_twist(z, k));
        x_model = direct_sum(x_model, tate_twist(z, k));
    }
    BlowupReport r;
    r.exceptional = graded_isomorphism(e, e_model, search_bound);
    r.total = graded_isomorphism(x, x_model, search_bound);
    r.class_identity = classes_equal({{1, x, 0}, {1, z, 0}}, {{1, y, 0}, {1, e, 0}}, search_bound);
    if (r.exceptional.failing_weight && r.total.failing_weight)
        r.failing_weight = std::min(*r.exceptional.failing_weight, *r.total.failing_weight);
    else if (r.exceptional.failing_weight)
        r.failing_weight = r.exceptional.failing_weight;
    else
        r.failing_weight = r.total.failing_weight;
    r.verified = r.exceptional.isomorphic && r.total.isomorphic && r.class_identity;
    return r;
}

K3Model k3_model(HodgeObject t, std::size_t ns_rank)
{
    t.validate();
    if (!t.gram) throw Error(ErrorKind::InvalidInput, "transcendental lattice needs a Gram matrix");
    Int d = determinant(*t.gram);
    if (d == 0) throw Error(ErrorKind::SingularGram, "Gram matrix of T is singular");
    return K3Model{std::move(t), ns_rank, d};
}

BrauerKernel brauer_kernel(const K3Model& k, const BrauerClass& a)
{
    const std::size_t r = k.t.rank;
    if (a.n < 1) throw Error(ErrorKind::InvalidInput, "Brauer class order must be positive");
    if (a.alpha.size() != r) throw Error(ErrorKind::DimensionMismatch, "alpha has wrong length");
    IntVector with_n = a.alpha;
    with_n.push_back(a.n);
    if (a.n > 1 && gcd_of(with_n) != 1) throw Error(ErrorKind::NotSurjective, "alpha is not surjective onto Z/" + to_string(a.n));

    IntMatrix row(1, r + 1);
    for (std::size_t i = 0; i <= r; ++i) row(0, i) = with_n[i];
    auto ker = kernel_basis(row);
    IntMatrix gens(ker.size(), r);
    for (std::size_t i = 0; i < ker.size(); ++i)
        for (std::size_t j = 0; j < r; ++j) gens(i, j) = ker[i][j];
    IntMatrix basis = hnf_rows(gens).transpose();

    BrauerKernel out;
    out.basis = basis;
    out.object = sublattice(k.t, basis);
    out.index = abs(determinant(basis));
    out.discriminant = determinant(*out.object.gram);
    return out;
}

ScalarTest scalar_sublattice_test(const HodgeObject& t, const IntMatrix& s)
{
    if (s.rows() != t.rank || s.cols() != t.rank) throw Error(ErrorKind::NotFiniteIndex, "sublattice basis must be square of the rank of T");
    ScalarTest out;
    out.index = abs(determinant(s));
    if (out.index == 0) throw Error(ErrorKind::NotFiniteIndex, "sublattice has infinite index");
    out.end_trivial = is_end_trivial(hs_hom(t, t));
    if (t.rank == 0) {
        out.k = Int(1);
        return out;
    }
    Int k;
    if (!mpz_root(k.get_mpz_t(), out.index.get_mpz_t(), static_cast<unsigned long>(t.rank))) return out;
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j)
            if (s(i, j) % k != 0) return out;
    // s / k is integral with determinant +-1, so S = kT
    out.k = k;
    return out;
}

PairingRepresentation represent_pairing(const HodgeObject& t, const IntMatrix& beta)
{
    if (!t.gram) throw Error(ErrorKind::SingularGram, "object carries no Gram matrix");
    if (beta.rows() != t.rank || beta.cols() != t.rank) throw Error(ErrorKind::DimensionMismatch, "pairing has wrong size");
    if (beta != beta.transpose()) throw Error(ErrorKind::InvalidInput, "pairing is not symmetric");
    auto g_inv = inverse(to_rational(*t.gram));
    if (!g_inv) throw Error(ErrorKind::SingularGram, "Gram matrix is singular");
    // beta(x, y) = x^T a^T G y, so a^T = beta G^-1 and a = G^-1 beta
    PairingRepresentation out;
    out.a = *g_inv * to_rational(beta);
    out.in_commutant = commutes(out.a, t.constraints);
    return out;
}

}  // namespace k0lat
