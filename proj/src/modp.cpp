#include "k0lat/modp.hpp"

#include <random>

#include "k0lat/fp_poly.hpp"

namespace k0lat {

namespace {

constexpr std::uint64_t kIsoSeed = 0x6b306c6174ULL;

std::vector<FpVector> identity_basis(std::size_t n)
{
    std::vector<FpVector> b(n, FpVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) b[i][i] = 1;
    return b;
}

FpMatrix random_element(const MatrixAlgebra& e, std::mt19937_64& rng)
{
    FpMatrix phi(e.p, e.n, e.n);
    for (const auto& b : e.basis) {
        FpElem c = static_cast<FpElem>(rng() % e.p);
        if (!c) continue;
        FpMatrix t = b;
        phi += t.scale(c);
    }
    return phi;
}

FpPoly power_part(const FpPoly& f, const FpPoly& h)
{
    FpPoly g = f, hk = FpPoly::constant(f.prime(), 1);
    for (;;) {
        FpPoly q(f.prime()), r(f.prime());
        poly_divmod(g, h, q, r);
        if (!r.is_zero()) break;
        g = q;
        hk = hk * h;
    }
    return hk;
}

std::vector<Summand> split(const FpModule& m, std::mt19937_64& rng)
{
    const std::size_t n = m.dim();
    if (n == 0) return {};
    MatrixAlgebra e = end_algebra(m);
    const std::size_t d = e.basis.size();
    if (d == 1) return {Summand{m, identity_basis(n), 1}};
    bool local_checked = false;
    for (int attempt = 0;; ++attempt) {
        FpMatrix phi = random_element(e, rng);
        FpPoly f = charpoly(phi);
        std::vector<FpPoly> facs = irreducible_factors(f, rng);
        if (facs.size() >= 2) {
            // generalized eigenspaces of phi are submodules since phi commutes with the action
            std::vector<Summand> out;
            for (const auto& h : facs) {
                auto ker = fp_nullspace(poly_eval(power_part(f, h), phi));
                FpModule sub = m.restrict_to(ker);
                for (auto& s : split(sub, rng)) {
                    std::vector<FpVector> lifted;
                    for (const auto& v : s.basis) {
                        FpVector w(n, 0);
                        for (std::size_t i = 0; i < v.size(); ++i)
                            if (v[i])
                                for (std::size_t j = 0; j < n; ++j)
                                    w[j] = static_cast<FpElem>((w[j] + static_cast<std::uint64_t>(v[i]) * ker[i][j]) % e.p);
                        lifted.push_back(std::move(w));
                    }
                    out.push_back(Summand{std::move(s.module), std::move(lifted), s.end_dim});
                }
            }
            return out;
        }
        if (!local_checked && attempt >= 3) {
            local_checked = true;
            if (is_local(e, radical(e))) return {Summand{m, identity_basis(n), d}};
        }
        if (attempt > 1000) throw Error(ErrorKind::InvalidInput, "decomposition failed to find a splitting endomorphism");
    }
}

std::vector<std::size_t> action_ranks(const FpModule& m)
{
    std::vector<std::size_t> r;
    for (const auto& a : m.actions()) r.push_back(fp_rank(a));
    return r;
}

bool invertible(const FpMatrix& a) { return a.rows() == a.cols() && fp_rank(a) == a.rows(); }

}  // namespace

std::vector<Summand> decompose_summands(const FpModule& m, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return split(m, rng);
}

bool is_indecomposable(const FpModule& m)
{
    if (m.dim() == 0) return false;
    MatrixAlgebra e = end_algebra(m);
    if (e.basis.size() == 1) return true;
    return is_local(e, radical(e));
}

std::optional<FpMatrix> indecomposables_isomorphic(const FpModule& m, const FpModule& n)
{
    if (m.dim() != n.dim()) return std::nullopt;
    // if M and N are isomorphic, the non-invertible maps form a proper subspace
    // of Hom(M, N), so some basis element is invertible
    for (auto& h : hom_space(m, n))
        if (invertible(h)) return h;
    return std::nullopt;
}

std::vector<std::size_t> fingerprint(const FpModule& m, std::size_t end_dim)
{
    std::vector<std::size_t> f{m.dim(), end_dim};
    for (auto r : action_ranks(m)) f.push_back(r);
    return f;
}

std::optional<FpMatrix> modules_isomorphic(const FpModule& m, const FpModule& n)
{
    if (!same_algebra(m.algebra(), n.algebra())) throw Error(ErrorKind::MismatchedOrders, "modules over different algebras");
    const FpElem p = m.prime();
    const std::size_t dim = m.dim();
    if (dim != n.dim()) return std::nullopt;
    if (m.actions() == n.actions()) return FpMatrix::identity(p, dim);
    if (action_ranks(m) != action_ranks(n)) return std::nullopt;

    std::vector<Summand> sm = decompose_summands(m, kIsoSeed);
    std::vector<Summand> sn = decompose_summands(n, kIsoSeed);
    if (sm.size() != sn.size()) return std::nullopt;
    std::vector<bool> used(sn.size(), false);
    std::vector<FpVector> pm_cols, pn_cols;
    FpMatrix blocks(p, dim, dim);
    std::size_t off = 0;
    for (const auto& s : sm) {
        std::optional<FpMatrix> psi;
        std::size_t match = sn.size();
        for (std::size_t j = 0; j < sn.size() && !psi; ++j) {
            if (used[j] || sn[j].end_dim != s.end_dim || sn[j].module.dim() != s.module.dim()) continue;
            psi = indecomposables_isomorphic(s.module, sn[j].module);
            if (psi) match = j;
        }
        if (!psi) return std::nullopt;
        used[match] = true;
        for (const auto& v : s.basis) pm_cols.push_back(v);
        for (const auto& v : sn[match].basis) pn_cols.push_back(v);
        blocks.set_block(off, off, *psi);
        off += s.module.dim();
    }
    FpMatrix pm = FpMatrix::from_columns(p, dim, pm_cols);
    FpMatrix pn = FpMatrix::from_columns(p, dim, pn_cols);
    auto pm_inv = fp_inverse(pm);
    if (!pm_inv) throw Error(ErrorKind::InvalidInput, "summands do not span the module");
    FpMatrix phi = pn * blocks * *pm_inv;
    for (std::size_t i = 0; i < m.actions().size(); ++i)
        if (phi * m.action(i) != n.action(i) * phi) throw Error(ErrorKind::InvalidInput, "assembled isomorphism fails to intertwine");
    if (!invertible(phi)) throw Error(ErrorKind::InvalidInput, "assembled isomorphism is singular");
    return phi;
}

std::size_t K0ClassFp::total_dim() const
{
    std::size_t t = 0;
    for (const auto& e : entries_) t += e.module.dim() * e.multiplicity;
    return t;
}

void K0ClassFp::add(const FpModule& indecomposable, std::size_t multiplicity, std::size_t end_dim)
{
    if (multiplicity == 0) return;
    auto fp = fingerprint(indecomposable, end_dim);
    for (auto& e : entries_)
        if (e.fingerprint == fp && indecomposables_isomorphic(e.module, indecomposable)) {
            e.multiplicity += multiplicity;
            return;
        }
    auto pos = entries_.begin();
    while (pos != entries_.end() && !(fp < pos->fingerprint)) ++pos;
    entries_.insert(pos, Entry{indecomposable, multiplicity, std::move(fp)});
}

bool operator==(const K0ClassFp& a, const K0ClassFp& b)
{
    if (a.entries_.size() != b.entries_.size()) return false;
    std::vector<bool> used(b.entries_.size(), false);
    for (const auto& e : a.entries_) {
        bool found = false;
        for (std::size_t j = 0; j < b.entries_.size() && !found; ++j) {
            const auto& f = b.entries_[j];
            if (used[j] || f.fingerprint != e.fingerprint || f.multiplicity != e.multiplicity) continue;
            if (!same_algebra(e.module.algebra(), f.module.algebra()))
                throw Error(ErrorKind::MismatchedOrders, "classes over different algebras");
            if (indecomposables_isomorphic(e.module, f.module)) {
                used[j] = true;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

K0ClassFp operator+(const K0ClassFp& a, const K0ClassFp& b)
{
    K0ClassFp r = a;
    for (const auto& e : b.entries_) r.add(e.module, e.multiplicity, e.fingerprint[1]);
    return r;
}

K0ClassFp k0_class_fp(const FpModule& m, std::uint64_t seed)
{
    K0ClassFp c;
    for (const auto& s : decompose_summands(m, seed)) c.add(s.module, 1, s.end_dim);
    return c;
}

std::vector<IndecomposableMultiplicity> decompose(const FpModule& m, std::uint64_t seed)
{
    std::vector<IndecomposableMultiplicity> out;
    K0ClassFp c = k0_class_fp(m, seed);
    for (const auto& e : c.entries()) out.push_back({e.module, e.multiplicity});
    return out;
}

}  // namespace k0lat
