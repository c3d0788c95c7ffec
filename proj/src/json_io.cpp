#include "k0lat/json_io.hpp"

#include "k0lat/error.hpp"

namespace k0lat::json_io {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what)
{
    throw Error(ErrorKind::InvalidInput, "schema: " + path + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& path)
{
    if (!j.is_object()) bad(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(path, std::string("missing field \"") + key + "\"");
    return *it;
}

const json& array_at(const json& j, const std::string& path)
{
    if (!j.is_array()) bad(path, "expected an array");
    return j;
}

std::shared_ptr<const Order> integers_order() { return std::make_shared<const Order>(Order::integers()); }

}  // namespace

Int to_int(const json& j, const std::string& path)
{
    if (j.is_number_integer()) return j.is_number_unsigned() ? Int(j.get<unsigned long>()) : Int(j.get<long>());
    if (!j.is_string()) bad(path, "expected an integer or a decimal string");
    const std::string s = j.get<std::string>();
    Int v;
    if (s.empty() || v.set_str(s, 10) != 0) bad(path, "\"" + s + "\" is not a decimal integer");
    return v;
}

Rat to_rat(const json& j, const std::string& path)
{
    if (j.is_number_integer()) return Rat(to_int(j, path));
    if (!j.is_string()) bad(path, "expected a rational string");
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(to_int(j, path));
    Int num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0 || den == 0)
        bad(path, "\"" + s + "\" is not a rational p/q");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

long to_long(const json& j, const std::string& path)
{
    Int v = to_int(j, path);
    if (!v.fits_slong_p()) bad(path, "integer out of range");
    return v.get_si();
}

IntVector to_int_vector(const json& j, const std::string& path)
{
    IntVector v;
    std::size_t i = 0;
    for (const auto& e : array_at(j, path)) {
        v.push_back(to_int(e, path + "[" + std::to_string(i) + "]"));
        ++i;
    }
    return v;
}

namespace {

template <class T, class F>
Matrix<T> to_matrix(const json& j, const std::string& path, F&& conv)
{
    const auto& rows = array_at(j, path);
    const std::size_t r = rows.size();
    const std::size_t c = r ? array_at(rows[0], path + "[0]").size() : 0;
    Matrix<T> m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        const std::string rp = path + "[" + std::to_string(i) + "]";
        const auto& row = array_at(rows[i], rp);
        if (row.size() != c) bad(rp, "ragged matrix");
        for (std::size_t k = 0; k < c; ++k) m(i, k) = conv(row[k], rp + "[" + std::to_string(k) + "]");
    }
    return m;
}

}  // namespace

IntMatrix to_int_matrix(const json& j, const std::string& path) { return to_matrix<Int>(j, path, to_int); }
RatMatrix to_rat_matrix(const json& j, const std::string& path) { return to_matrix<Rat>(j, path, to_rat); }

json encode(const Int& v) { return v.get_str(); }
json encode(const Rat& v) { return v.get_str(); }

json encode(const IntVector& v)
{
    json out = json::array();
    for (const auto& e : v) out.push_back(encode(e));
    return out;
}

json encode(const IntMatrix& m)
{
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(encode(m(i, k)));
        out.push_back(std::move(row));
    }
    return out;
}

json encode(const RatMatrix& m)
{
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(encode(m(i, k)));
        out.push_back(std::move(row));
    }
    return out;
}

json encode(const FpMatrix& m) { return encode(m.lift()); }

std::shared_ptr<const Order> to_order(const json& j, const std::string& path)
{
    if (!j.is_object()) bad(path, "expected an object");
    if (j.contains("integers")) return integers_order();
    if (j.contains("quadratic")) {
        const auto& q = array_at(j["quadratic"], path + ".quadratic");
        if (q.size() != 2) bad(path + ".quadratic", "expected [a, b]");
        return std::make_shared<const Order>(Order::quadratic(to_long(q[0], path + ".quadratic[0]"), to_long(q[1], path + ".quadratic[1]")));
    }
    const long rank = to_long(field(j, "rank", path), path + ".rank");
    if (rank < 1) bad(path + ".rank", "must be positive");
    IntVector table = to_int_vector(field(j, "table", path), path + ".table");
    IntVector unit = to_int_vector(field(j, "unit", path), path + ".unit");
    return std::make_shared<const Order>(static_cast<std::size_t>(rank), std::vector<Int>(table.begin(), table.end()), unit);
}

json encode(const Order& o)
{
    return json{{"rank", o.rank()}, {"table", encode(IntVector(o.table().begin(), o.table().end()))}, {"unit", encode(o.unit())}};
}

LatticeModule to_module(const json& j, const std::shared_ptr<const Order>& order, const std::string& path)
{
    if (!j.is_object()) bad(path, "expected an object");
    if (j.contains("regular")) return LatticeModule::regular(order);
    if (j.contains("sublattice")) {
        const auto& s = j["sublattice"];
        LatticeModule of = to_module(field(s, "of", path + ".sublattice"), order, path + ".sublattice.of");
        return of.sublattice(to_int_matrix(field(s, "basis", path + ".sublattice"), path + ".sublattice.basis"));
    }
    if (j.contains("conjugate")) {
        const auto& s = j["conjugate"];
        LatticeModule of = to_module(field(s, "of", path + ".conjugate"), order, path + ".conjugate.of");
        return of.conjugate(to_int_matrix(field(s, "by", path + ".conjugate"), path + ".conjugate.by"));
    }
    std::vector<IntMatrix> actions;
    const auto& a = array_at(field(j, "actions", path), path + ".actions");
    for (std::size_t i = 0; i < a.size(); ++i) actions.push_back(to_int_matrix(a[i], path + ".actions[" + std::to_string(i) + "]"));
    return LatticeModule(order, std::move(actions));
}

json encode(const LatticeModule& m)
{
    json actions = json::array();
    for (const auto& a : m.actions()) actions.push_back(encode(a));
    return json{{"rank", m.rank()}, {"actions", std::move(actions)}};
}

json encode(const HomLattice& h)
{
    json basis = json::array();
    for (const auto& b : h.basis) basis.push_back(encode(b));
    return json{{"source_rank", h.source_rank}, {"target_rank", h.target_rank}, {"rank", h.rank()}, {"basis", std::move(basis)}};
}

json encode(const RetractCertificate& c) { return json{{"n", c.n}, {"f", encode(c.f)}, {"g", encode(c.g)}}; }

FgRing to_ring(const json& j, const std::string& path)
{
    if (!j.is_object()) bad(path, "expected an object");
    if (j.contains("zmod")) return FgRing::zmod(to_long(j["zmod"], path + ".zmod"));
    if (j.contains("matrix_ring")) {
        const auto& m = array_at(j["matrix_ring"], path + ".matrix_ring");
        if (m.size() != 2) bad(path + ".matrix_ring", "expected [k, n]");
        long k = to_long(m[0], path + ".matrix_ring[0]");
        if (k < 1) bad(path + ".matrix_ring[0]", "must be positive");
        return FgRing::matrix_ring(static_cast<std::size_t>(k), to_long(m[1], path + ".matrix_ring[1]"));
    }
    if (j.contains("order")) {
        FgRing r = FgRing::from_order(*to_order(j["order"], path + ".order"));
        if (j.contains("mod")) return r.reduce_mod(to_int(j["mod"], path + ".mod"));
        return r;
    }
    IntVector moduli = to_int_vector(field(j, "moduli", path), path + ".moduli");
    IntVector table = to_int_vector(field(j, "table", path), path + ".table");
    IntVector unit = to_int_vector(field(j, "unit", path), path + ".unit");
    return FgRing(moduli, std::vector<Int>(table.begin(), table.end()), unit);
}

json encode(const FgRing& r)
{
    return json{{"moduli", encode(r.moduli())}, {"table", encode(IntVector(r.table().begin(), r.table().end()))}, {"unit", encode(r.unit())}};
}

HodgeObject to_hodge(const json& j, const std::string& path)
{
    if (!j.is_object()) bad(path, "expected an object");
    if (j.contains("sublattice")) {
        const auto& s = j["sublattice"];
        HodgeObject of = to_hodge(field(s, "of", path + ".sublattice"), path + ".sublattice.of");
        return sublattice(of, to_int_matrix(field(s, "basis", path + ".sublattice"), path + ".sublattice.basis"));
    }
    const long weight = to_long(field(j, "weight", path), path + ".weight");
    const long rank = to_long(field(j, "rank", path), path + ".rank");
    if (rank < 0) bad(path + ".rank", "must be nonnegative");
    std::vector<RatMatrix> constraints;
    if (j.contains("constraints")) {
        const auto& c = array_at(j["constraints"], path + ".constraints");
        for (std::size_t i = 0; i < c.size(); ++i)
            constraints.push_back(to_rat_matrix(c[i], path + ".constraints[" + std::to_string(i) + "]"));
    }
    std::optional<IntMatrix> gram;
    if (j.contains("gram")) gram = to_int_matrix(j["gram"], path + ".gram");
    return hodge_object(static_cast<int>(weight), static_cast<std::size_t>(rank), std::move(constraints), std::move(gram));
}

json encode(const HodgeObject& h)
{
    json c = json::array();
    for (const auto& m : h.constraints) c.push_back(encode(m));
    json out{{"weight", h.weight}, {"rank", h.rank}, {"constraints", std::move(c)}};
    if (h.gram) out["gram"] = encode(*h.gram);
    return out;
}

GradedHodgeObject to_graded(const json& j, const std::string& path)
{
    GradedHodgeObject g;
    const auto& a = array_at(j, path);
    for (std::size_t i = 0; i < a.size(); ++i) g.add(to_hodge(a[i], path + "[" + std::to_string(i) + "]"));
    return g;
}

json encode(const GradedHodgeObject& g)
{
    json out = json::array();
    for (const auto& [w, h] : g.components()) out.push_back(encode(h));
    return out;
}

json encode(const QuadElement& e) { return json{{"x", encode(e.x)}, {"y", encode(e.y)}}; }

json encode(const K0ClassFp& c)
{
    json out = json::array();
    for (const auto& e : c.entries())
        out.push_back(json{{"dim", e.module.dim()}, {"multiplicity", e.multiplicity}, {"fingerprint", e.fingerprint}});
    return out;
}

}  // namespace k0lat::json_io
