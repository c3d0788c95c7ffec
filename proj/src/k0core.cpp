#include "k0lat/k0core.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <set>

namespace k0lat {

namespace {

IntMatrix zero_matrix(std::size_t r, std::size_t c) { return IntMatrix(r, c); }

std::size_t hom_rank_product(const HomLattice& a, const HomLattice& b) { return a.rank() * b.rank(); }

/* tr(a_i b_j) for square products of basis elements. */
IntMatrix trace_pairing(const HomLattice& a, const HomLattice& b)
{
    IntMatrix g(a.rank(), b.rank());
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < b.rank(); ++j) g(i, j) = trace(b.basis[j] * a.basis[i]);
    return g;
}

void add_prime_divisors(std::vector<Int>& out, const IntMatrix& m)
{
    if (m.rows() == 0 || m.cols() == 0) return;
    for (const auto& d : snf(m).invariant_factors())
        for (const auto& p : prime_divisors(d)) out.push_back(p);
}

struct HomSet {
    HomLattice end_x, end_y, xy, yx;
};

HomSet homs_of(const LatticeModule& x, const LatticeModule& y)
{
    if (!same_order(x, y)) throw Error(ErrorKind::MismatchedOrders, "modules over different orders");
    return HomSet{hom_group(x, x), hom_group(y, y), hom_group(x, y), hom_group(y, x)};
}

std::vector<Int> primes_for(const HomSet& h, std::uint64_t prime_bound)
{
    std::vector<Int> out;
    for (auto p : primes_up_to(prime_bound)) out.push_back(Int(static_cast<unsigned long>(p)));
    add_prime_divisors(out, trace_pairing(h.end_x, h.end_x));
    add_prime_divisors(out, trace_pairing(h.end_y, h.end_y));
    if (hom_rank_product(h.xy, h.yx) > 0) add_prime_divisors(out, trace_pairing(h.xy, h.yx));
    for (const auto& idx : {composition_ideal(h.end_x, h.xy, h.yx).index, composition_ideal(h.end_y, h.yx, h.xy).index})
        if (idx > 1)
            for (const auto& p : prime_divisors(idx)) out.push_back(p);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/* Union-find over indices. */
struct Dsu {
    std::vector<std::size_t> parent;
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t i)
    {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

struct FullClass {
    std::vector<IntVector> members;  // sorted
};

std::vector<FullClass> idempotent_classes(const FgRing& a, std::size_t cutoff)
{
    auto elems = a.elements(cutoff);
    std::vector<IntVector> idem;
    std::vector<std::pair<IntVector, IntVector>> units;
    for (const auto& x : elems) {
        if (a.multiply(x, x) == x) idem.push_back(x);
        if (auto inv = a.inverse(x)) units.emplace_back(x, *inv);
    }
    std::map<IntVector, std::size_t> index;
    for (std::size_t i = 0; i < idem.size(); ++i) index[idem[i]] = i;
    Dsu dsu(idem.size());
    for (const auto& [u, v] : units)
        for (std::size_t i = 0; i < idem.size(); ++i) {
            auto it = index.find(a.multiply(a.multiply(u, idem[i]), v));
            if (it == index.end()) throw Error(ErrorKind::InvalidInput, "conjugate of an idempotent is not idempotent");
            dsu.unite(i, it->second);
        }
    std::map<std::size_t, FullClass> by_root;
    for (std::size_t i = 0; i < idem.size(); ++i) by_root[dsu.find(i)].members.push_back(idem[i]);
    std::vector<FullClass> out;
    for (auto& [root, c] : by_root) {
        std::sort(c.members.begin(), c.members.end());
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const FullClass& l, const FullClass& r) { return l.members[0] < r.members[0]; });
    return out;
}

/* Multiplication in an order with machine integers when the table allows it. */
class SmallOrder {
public:
    explicit SmallOrder(const Order& o) : n_(o.rank()), ok_(true)
    {
        for (const auto& c : o.table()) {
            if (!c.fits_slong_p() || abs(c) > (Int(1) << 40)) ok_ = false;
            t_.push_back(ok_ ? c.get_si() : 0);
        }
    }
    bool usable() const { return ok_; }
    bool is_idempotent(const std::vector<long>& e) const
    {
        for (std::size_t k = 0; k < n_; ++k) {
            __int128 s = 0;
            for (std::size_t i = 0; i < n_; ++i) {
                if (!e[i]) continue;
                for (std::size_t j = 0; j < n_; ++j)
                    if (e[j]) s += static_cast<__int128>(e[i]) * e[j] * t_[(i * n_ + j) * n_ + k];
            }
            if (s != e[k]) return false;
        }
        return true;
    }

private:
    std::size_t n_;
    bool ok_;
    std::vector<long> t_;
};

IntVector to_int_vector(const std::vector<long>& v)
{
    IntVector r;
    for (long x : v) r.emplace_back(x);
    return r;
}

LatticeModule image_module(const LatticeModule& yn, const IntMatrix& e)
{
    IntMatrix rows = hnf_rows(e.transpose());
    std::vector<IntVector> cols;
    for (std::size_t i = 0; i < rows.rows(); ++i) cols.push_back(rows.row(i));
    if (cols.empty()) return LatticeModule::zero(yn.order_ptr());
    return yn.sublattice(IntMatrix::from_columns(yn.rank(), cols));
}

}  // namespace

std::string_view to_string(IsoVerdict v)
{
    switch (v) {
    case IsoVerdict::IsoConstructed: return "IsoConstructed";
    case IsoVerdict::NotApplicable: return "NotApplicable";
    case IsoVerdict::NoIso: return "NoIso";
    }
    return "?";
}

std::string_view to_string(ProbeVerdict v)
{
    switch (v) {
    case ProbeVerdict::IsoConstructed: return "IsoConstructed";
    case ProbeVerdict::ObstructionFound: return "ObstructionFound";
    case ProbeVerdict::NecessaryConditionsPass: return "NecessaryConditionsPass";
    }
    return "?";
}

CompositionIdeal composition_ideal(const HomLattice& end_x, const HomLattice& x_to_y, const HomLattice& y_to_x)
{
    const std::size_t n = end_x.source_rank;
    const std::size_t r = end_x.rank();
    CompositionIdeal out;
    out.end = end_x;
    if (n == 0) {
        out.basis = IntMatrix(0, 0);
        out.contains_identity = true;
        out.index = 1;
        return out;
    }
    std::vector<IntVector> rows;
    for (const auto& f : x_to_y.basis)
        for (const auto& g : y_to_x.basis) {
            auto c = end_x.coordinates(g * f);
            if (!c) throw Error(ErrorKind::InvalidInput, "composite is not an endomorphism");
            rows.push_back(std::move(*c));
        }
    out.basis = rows.empty() ? IntMatrix(0, r) : hnf_rows(IntMatrix::from_rows(r, rows));
    auto id = end_x.coordinates(IntMatrix::identity(n));
    if (!id) throw Error(ErrorKind::InvalidInput, "identity is not in the end lattice");
    out.contains_identity = out.basis.rows() > 0 && solve_integer(out.basis.transpose(), *id).has_value();
    out.index = out.basis.rows() == r ? Int(abs(determinant(out.basis))) : Int(0);
    return out;
}

CompositionIdeal composition_ideal(const LatticeModule& x, const LatticeModule& y)
{
    if (!same_order(x, y)) throw Error(ErrorKind::MismatchedOrders, "modules over different orders");
    return composition_ideal(hom_group(x, x), hom_group(x, y), hom_group(y, x));
}

std::optional<RetractCertificate> retract_certificate(std::size_t rank_x, const HomLattice& x_to_y, const HomLattice& y_to_x)
{
    const std::size_t ry = x_to_y.target_rank;
    if (rank_x == 0) return RetractCertificate{1, zero_matrix(ry, 0), zero_matrix(0, ry)};
    const std::size_t a = x_to_y.rank(), b = y_to_x.rank();
    if (a == 0 || b == 0) return std::nullopt;
    IntMatrix sys(rank_x * rank_x, a * b);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < b; ++j) {
            IntVector col = flatten(y_to_x.basis[j] * x_to_y.basis[i]);
            for (std::size_t k = 0; k < col.size(); ++k) sys(k, i * b + j) = col[k];
        }
    auto c = solve_integer(sys, flatten(IntMatrix::identity(rank_x)));
    if (!c) return std::nullopt;
    auto coef = [&](std::size_t i, std::size_t j) -> const Int& { return (*c)[i * b + j]; };

    // 1 = sum_i (sum_j c_ij g_j) f_i = sum_j g_j (sum_i c_ij f_i); keep the shorter
    std::vector<IntMatrix> fs, gs;
    std::vector<IntMatrix> fa, ga, fb, gb;
    for (std::size_t i = 0; i < a; ++i) {
        IntMatrix g(rank_x, ry);
        for (std::size_t j = 0; j < b; ++j)
            if (coef(i, j) != 0) g += y_to_x.basis[j] * coef(i, j);
        if (!g.is_zero()) {
            fa.push_back(x_to_y.basis[i]);
            ga.push_back(std::move(g));
        }
    }
    for (std::size_t j = 0; j < b; ++j) {
        IntMatrix f(ry, rank_x);
        for (std::size_t i = 0; i < a; ++i)
            if (coef(i, j) != 0) f += x_to_y.basis[i] * coef(i, j);
        if (!f.is_zero()) {
            fb.push_back(std::move(f));
            gb.push_back(y_to_x.basis[j]);
        }
    }
    if (fb.size() < fa.size()) {
        fs = std::move(fb);
        gs = std::move(gb);
    } else {
        fs = std::move(fa);
        gs = std::move(ga);
    }
    RetractCertificate cert;
    cert.n = fs.size();
    cert.f = IntMatrix(cert.n * ry, rank_x);
    cert.g = IntMatrix(rank_x, cert.n * ry);
    for (std::size_t t = 0; t < cert.n; ++t) {
        cert.f.set_block(t * ry, 0, fs[t]);
        cert.g.set_block(0, t * ry, gs[t]);
    }
    if (cert.g * cert.f != IntMatrix::identity(rank_x)) throw Error(ErrorKind::InvalidInput, "retract certificate failed verification");
    return cert;
}

std::optional<RetractCertificate> retract_certificate(const LatticeModule& x, const LatticeModule& y)
{
    if (!same_order(x, y)) throw Error(ErrorKind::MismatchedOrders, "modules over different orders");
    return retract_certificate(x.rank(), hom_group(x, y), hom_group(y, x));
}

IsoFromStable iso_from_stable(std::size_t rank_x, std::size_t rank_y, const HomLattice& end_x, const HomLattice& x_to_y,
                              const HomLattice& y_to_x)
{
    IsoFromStable out;
    out.end_rank = end_x.rank();
    if (out.end_rank != 1) {
        out.verdict = IsoVerdict::NotApplicable;
        out.reason = "End(X) has rank " + std::to_string(out.end_rank);
        return out;
    }
    out.verdict = IsoVerdict::NoIso;
    if (!retract_certificate(rank_x, x_to_y, y_to_x)) {
        out.reason = "X is not a retract of a power of Y";
        return out;
    }
    if (!retract_certificate(rank_y, y_to_x, x_to_y)) {
        out.reason = "Y is not a retract of a power of X";
        return out;
    }
    if (rank_x != rank_y) {
        out.reason = "ranks differ";
        return out;
    }
    if (x_to_y.rank() != 1) {
        out.reason = "Hom(X, Y) has rank " + std::to_string(x_to_y.rank());
        return out;
    }
    const IntMatrix& h = x_to_y.basis[0];
    Int d = determinant(h);
    if (abs(d) != 1) {
        out.reason = "generator of Hom(X, Y) has determinant " + to_string(d);
        return out;
    }
    out.verdict = IsoVerdict::IsoConstructed;
    out.iso = h;
    return out;
}

IsoFromStable iso_from_stable(const LatticeModule& x, const LatticeModule& y)
{
    HomSet h = homs_of(x, y);
    return iso_from_stable(x.rank(), y.rank(), h.end_x, h.xy, h.yx);
}

std::optional<IntMatrix> search_unimodular(const HomLattice& h, long bound, std::size_t budget)
{
    if (h.source_rank != h.target_rank) return std::nullopt;
    if (h.source_rank == 0) return IntMatrix(0, 0);
    const std::size_t r = h.rank();
    if (r == 0 || bound < 1) return std::nullopt;
    auto count = [&](long b) {
        double c = 1;
        for (std::size_t i = 0; i < r; ++i) c *= static_cast<double>(2 * b + 1);
        return c;
    };
    while (bound > 1 && count(bound) > static_cast<double>(budget)) --bound;
    std::vector<long> c(r, -bound);
    for (;;) {
        if (std::any_of(c.begin(), c.end(), [](long v) { return v != 0; })) {
            IntMatrix m(h.target_rank, h.source_rank);
            for (std::size_t i = 0; i < r; ++i)
                if (c[i]) m += h.basis[i] * Int(c[i]);
            if (abs(determinant(m)) == 1) return m;
        }
        std::size_t i = 0;
        while (i < r && c[i] == bound) c[i++] = -bound;
        if (i == r) return std::nullopt;
        ++c[i];
    }
}

std::vector<Int> probe_primes(const LatticeModule& x, const LatticeModule& y, std::uint64_t prime_bound)
{
    return primes_for(homs_of(x, y), prime_bound);
}

StableIsoReport stable_iso_probe(const LatticeModule& x, const LatticeModule& y, std::uint64_t prime_bound, std::uint64_t seed)
{
    HomSet h = homs_of(x, y);
    StableIsoReport rep;
    rep.x_retract_of_y = retract_certificate(x.rank(), h.xy, h.yx);
    rep.y_retract_of_x = retract_certificate(y.rank(), h.yx, h.xy);
    rep.min_generators_end_x = min_generators(h.end_x);
    rep.min_generators_end_y = min_generators(h.end_y);
    rep.min_generators_hom_xy = min_generators(h.xy);
    rep.min_generators_hom_yx = min_generators(h.yx);

    if (x.rank() == y.rank()) {
        if (x.actions() == y.actions()) {
            rep.iso = IntMatrix::identity(x.rank());
        } else {
            for (const auto& b : h.xy.basis)
                if (abs(determinant(b)) == 1) {
                    rep.iso = b;
                    break;
                }
            if (!rep.iso && h.end_x.rank() == 1) {
                auto s = iso_from_stable(x.rank(), y.rank(), h.end_x, h.xy, h.yx);
                if (s.verdict == IsoVerdict::IsoConstructed) rep.iso = s.iso;
            }
        }
    }

    for (const auto& q : primes_for(h, prime_bound)) {
        if (q > INT_MAX) {
            rep.skipped_primes.push_back(q.get_ui());
            continue;
        }
        const auto p = static_cast<FpElem>(q.get_ui());
        if (rep.iso) {
            // an integral isomorphism reduces to an isomorphism at every prime
            rep.primes.push_back({p, true});
            continue;
        }
        K0ClassFp cx = k0_class_fp(tensor_fp(x, p), seed);
        K0ClassFp cy = k0_class_fp(tensor_fp(y, p), seed);
        bool same = cx == cy;
        rep.primes.push_back({p, same});
        if (!same) {
            rep.verdict = ProbeVerdict::ObstructionFound;
            rep.obstruction_prime = p;
            rep.x_class = std::move(cx);
            rep.y_class = std::move(cy);
            rep.obstruction = "classes differ modulo " + std::to_string(p);
            return rep;
        }
    }
    if (rep.iso) {
        rep.verdict = ProbeVerdict::IsoConstructed;
        return rep;
    }
    if (!rep.x_retract_of_y || !rep.y_retract_of_x) {
        rep.verdict = ProbeVerdict::ObstructionFound;
        rep.obstruction = !rep.x_retract_of_y ? "X is not a retract of a power of Y" : "Y is not a retract of a power of X";
        return rep;
    }
    if (rep.min_generators_end_x != rep.min_generators_hom_xy || rep.min_generators_end_y != rep.min_generators_hom_yx) {
        rep.verdict = ProbeVerdict::ObstructionFound;
        rep.obstruction = "minimal generator counts of End and Hom differ";
        return rep;
    }
    rep.verdict = ProbeVerdict::NecessaryConditionsPass;
    return rep;
}

std::vector<IdempotentClass> enumerate_idempotents_conj(const FgRing& a, std::size_t cutoff)
{
    std::vector<IdempotentClass> out;
    for (const auto& c : idempotent_classes(a, cutoff)) out.push_back({c.members.front(), c.members.size()});
    return out;
}

std::size_t min_generators(const IntMatrix& relations)
{
    const std::size_t g = relations.cols();
    if (relations.rows() == 0) return g;
    SnfResult s = snf(relations);
    std::size_t count = g - s.rank;
    for (const auto& d : s.invariant_factors())
        if (d != 1) ++count;
    return count;
}

std::size_t min_generators(const HomLattice& h) { return h.rank(); }

RetractClasses retract_classes_of_power(const LatticeModule& y, std::size_t n, std::uint64_t prime_bound, std::uint64_t seed,
                                        const RetractSearch& cfg)
{
    RetractClasses out;
    if (n == 0 || y.rank() == 0) {
        out.representatives.push_back(LatticeModule::zero(y.order_ptr()));
        out.idempotents.push_back(IntMatrix(0, 0));
        out.classes_mod_2 = 1;
        out.complete = true;
        return out;
    }
    LatticeModule yn = power(y, n);
    EndRing er = end_ring(yn);
    const std::size_t r = er.order.rank();
    if (r > cfg.end_rank_cap)
        throw Error(ErrorKind::TooLarge, "end ring of rank " + std::to_string(r) + " exceeds the cap " + std::to_string(cfg.end_rank_cap));
    FgRing mod2 = FgRing::from_order(er.order).reduce_mod(2);
    auto classes = idempotent_classes(mod2, std::size_t(1) << 20);
    out.classes_mod_2 = classes.size();
    std::map<IntVector, std::size_t> class_of;
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (const auto& m : classes[c].members) class_of[m] = c;

    // integral idempotents: Hensel iteration from each class member, then a window scan
    std::set<IntVector> found;
    for (const auto& c : classes)
        for (const auto& m : c.members) {
            IntVector e = m;
            for (int step = 0; step <= cfg.hensel_steps; ++step) {
                IntVector e2 = er.order.multiply(e, e);
                if (e2 == e) {
                    found.insert(e);
                    break;
                }
                IntVector e3 = er.order.multiply(e2, e);
                bool big = false;
                for (std::size_t i = 0; i < r; ++i) {
                    e[i] = 3 * e2[i] - 2 * e3[i];
                    if (abs(e[i]) > (Int(1) << 40)) big = true;
                }
                if (big) break;
            }
        }
    // every integral idempotent reduces to an idempotent mod 2, so the window
    // scan only visits coordinates with the parity of some idempotent mod 2
    SmallOrder small(er.order);
    const long b = cfg.coefficient_bound;
    for (const auto& c : classes)
        for (const auto& m : c.members) {
            std::vector<long> lo(r), w(r);
            for (std::size_t i = 0; i < r; ++i) {
                long par = m[i].get_si();
                lo[i] = (b - par) % 2 == 0 ? -b : -b + 1;
                w[i] = lo[i];
            }
            if (std::any_of(lo.begin(), lo.end(), [&](long v) { return v > b; })) continue;
            for (;;) {
                bool hit = small.usable() ? small.is_idempotent(w)
                                          : er.order.multiply(to_int_vector(w), to_int_vector(w)) == to_int_vector(w);
                if (hit) found.insert(to_int_vector(w));
                std::size_t i = 0;
                while (i < r && w[i] + 2 > b) {
                    w[i] = lo[i];
                    ++i;
                }
                if (i == r) break;
                w[i] += 2;
            }
        }

    std::vector<bool> lifted(classes.size(), false);
    std::set<IntMatrix> seen_images;
    bool undetermined = false;
    for (const auto& e : found) {
        lifted[class_of.at(mod2.normalize(e))] = true;
        IntMatrix em = er.hom.element(e);
        IntMatrix img = hnf_rows(em.transpose());
        if (!seen_images.insert(img).second) continue;
        LatticeModule mod = image_module(yn, em);
        bool merged = false, unsure = false;
        for (std::size_t k = 0; k < out.representatives.size() && !merged; ++k) {
            const LatticeModule& other = out.representatives[k];
            if (other.rank() != mod.rank()) continue;
            if (search_unimodular(hom_group(mod, other), cfg.iso_search_bound))
                merged = true;
            else if (stable_iso_probe(mod, other, prime_bound, seed).verdict != ProbeVerdict::ObstructionFound)
                unsure = true;
        }
        if (merged) continue;
        if (unsure) undetermined = true;
        out.representatives.push_back(std::move(mod));
        out.idempotents.push_back(std::move(em));
    }
    out.unlifted = static_cast<std::size_t>(std::count(lifted.begin(), lifted.end(), false));
    out.complete = out.unlifted == 0 && !undetermined;

    std::vector<std::size_t> order(out.representatives.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t rr) { return out.representatives[l].rank() < out.representatives[rr].rank(); });
    RetractClasses sorted;
    sorted.classes_mod_2 = out.classes_mod_2;
    sorted.unlifted = out.unlifted;
    sorted.complete = out.complete;
    for (auto i : order) {
        sorted.representatives.push_back(out.representatives[i]);
        sorted.idempotents.push_back(out.idempotents[i]);
    }
    return sorted;
}

}  // namespace k0lat
