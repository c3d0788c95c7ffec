#include "k0lat/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "k0lat/json_io.hpp"

namespace k0lat::cli {

namespace {

using json = nlohmann::json;
using namespace json_io;

constexpr std::uint64_t kDefaultPrimeBound = 100;
constexpr long kDefaultSearchFactor = 10;
constexpr long kIsoSearchBound = 3;

struct Config {
    std::uint64_t seed = 0;
    std::uint64_t prime_bound = kDefaultPrimeBound;
    std::optional<std::uint64_t> prime;
    long search_factor = kDefaultSearchFactor;
    std::string format = "json";
};

struct Outcome {
    json result;
    int code = 0;
};

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, "schema: " + what); }

const json& need(const json& j, const char* key)
{
    auto it = j.find(key);
    if (it == j.end()) bad(std::string("missing field \"") + key + "\"");
    return *it;
}

bool hodge_category(const json& in)
{
    if (!in.contains("category")) return false;
    const auto& c = in["category"];
    if (c == "hodge") return true;
    if (c == "modules") return false;
    bad("category must be \"modules\" or \"hodge\"");
}

struct ModulePair {
    std::shared_ptr<const Order> order;
    LatticeModule x, y;
};

ModulePair module_pair(const json& in)
{
    auto order = to_order(need(in, "order"), "order");
    return {order, to_module(need(in, "X"), order, "X"), to_module(need(in, "Y"), order, "Y")};
}

std::pair<HodgeObject, HodgeObject> hodge_pair(const json& in)
{
    return {to_hodge(need(in, "X"), "X"), to_hodge(need(in, "Y"), "Y")};
}

json iso_json(const IsoFromStable& s)
{
    json out{{"verdict", std::string(to_string(s.verdict))}, {"reason", s.reason}, {"end_rank", s.end_rank}};
    out["iso"] = s.iso ? encode(*s.iso) : json(nullptr);
    return out;
}

json optional_cert(const std::optional<RetractCertificate>& c) { return c ? encode(*c) : json(nullptr); }

Outcome cmd_hom(const json& in, const Config&)
{
    if (hodge_category(in)) {
        auto [x, y] = hodge_pair(in);
        return {json{{"hom", encode(hs_hom(x, y))}}};
    }
    ModulePair p = module_pair(in);
    return {json{{"hom", encode(hom_group(p.x, p.y))}}};
}

Outcome cmd_retract(const json& in, const Config&)
{
    std::optional<RetractCertificate> xy, yx;
    if (hodge_category(in)) {
        auto [x, y] = hodge_pair(in);
        xy = hs_retract_certificate(x, y);
        yx = hs_retract_certificate(y, x);
    } else {
        ModulePair p = module_pair(in);
        xy = retract_certificate(p.x, p.y);
        yx = retract_certificate(p.y, p.x);
    }
    return {json{{"x_retract_of_y", optional_cert(xy)}, {"y_retract_of_x", optional_cert(yx)}}, xy ? 0 : 1};
}

/* Explicit isomorphism first (identity, unimodular basis element), then the
 * End = Z criterion, then a bounded search. */
Outcome cmd_iso(const json& in, const Config&)
{
    IsoFromStable s;
    if (hodge_category(in)) {
        auto [x, y] = hodge_pair(in);
        s = hs_iso_from_stable(x, y);
        if (!s.iso) {
            if (auto iso = hs_isomorphism(x, y, kIsoSearchBound)) {
                s.verdict = IsoVerdict::IsoConstructed;
                s.iso = iso;
                s.reason = "explicit unimodular morphism";
            }
        }
    } else {
        ModulePair p = module_pair(in);
        std::optional<IntMatrix> direct;
        if (p.x.rank() == p.y.rank() && p.x.actions() == p.y.actions()) direct = IntMatrix::identity(p.x.rank());
        HomLattice h = hom_group(p.x, p.y);
        if (!direct)
            for (const auto& b : h.basis)
                if (abs(determinant(b)) == 1) {
                    direct = b;
                    break;
                }
        s = iso_from_stable(p.x, p.y);
        if (!direct && s.verdict == IsoVerdict::NotApplicable) direct = search_unimodular(h, kIsoSearchBound);
        if (direct && !s.iso) {
            s.verdict = IsoVerdict::IsoConstructed;
            s.iso = direct;
            s.reason = "explicit unimodular intertwiner";
        }
    }
    return {iso_json(s), s.verdict == IsoVerdict::IsoConstructed ? 0 : 1};
}

Outcome cmd_probe(const json& in, const Config& cfg)
{
    if (hodge_category(in)) bad("probe works on modules over an order");
    ModulePair p = module_pair(in);
    StableIsoReport r = stable_iso_probe(p.x, p.y, cfg.prime_bound, cfg.seed);
    json primes = json::array();
    for (const auto& c : r.primes) primes.push_back(json{{"p", c.p}, {"isomorphic", c.isomorphic}});
    json out{{"verdict", std::string(to_string(r.verdict))},
             {"primes", std::move(primes)},
             {"skipped_primes", r.skipped_primes},
             {"x_retract_of_y", optional_cert(r.x_retract_of_y)},
             {"y_retract_of_x", optional_cert(r.y_retract_of_x)},
             {"min_generators",
              json{{"end_x", r.min_generators_end_x}, {"hom_xy", r.min_generators_hom_xy}, {"end_y", r.min_generators_end_y},
                   {"hom_yx", r.min_generators_hom_yx}}},
             {"obstruction", r.obstruction}};
    out["obstruction_prime"] = r.obstruction_prime ? json(*r.obstruction_prime) : json(nullptr);
    out["x_class"] = r.x_class ? encode(*r.x_class) : json(nullptr);
    out["y_class"] = r.y_class ? encode(*r.y_class) : json(nullptr);
    out["iso"] = r.iso ? encode(*r.iso) : json(nullptr);
    return {out, r.verdict == ProbeVerdict::ObstructionFound ? 1 : 0};
}

Outcome cmd_decomp_p(const json& in, const Config& cfg)
{
    std::optional<FpModule> m;
    if (in.contains("algebra")) {
        const auto& a = in["algebra"];
        const long p = to_long(need(a, "p"), "algebra.p");
        if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
        std::vector<FpMatrix> basis;
        const auto& b = need(a, "basis");
        if (!b.is_array()) bad("algebra.basis must be an array");
        for (std::size_t i = 0; i < b.size(); ++i)
            basis.push_back(FpMatrix::reduce(to_int_matrix(b[i], "algebra.basis[" + std::to_string(i) + "]"), static_cast<FpElem>(p)));
        auto alg = std::make_shared<const FpAlgebra>(FpAlgebra::from_matrices(basis));
        m.emplace(alg, basis);
    } else {
        std::optional<std::uint64_t> p = cfg.prime;
        if (!p && in.contains("prime")) p = static_cast<std::uint64_t>(to_long(in["prime"], "prime"));
        if (!p) bad("decomp-p needs --prime or a \"prime\" field");
        if (*p < 2 || !is_prime(*p)) throw Error(ErrorKind::NotPrime, std::to_string(*p) + " is not prime");
        auto order = to_order(need(in, "order"), "order");
        m.emplace(tensor_fp(to_module(need(in, "X"), order, "X"), static_cast<FpElem>(*p)));
    }
    K0ClassFp c = k0_class_fp(*m, cfg.seed);
    std::size_t count = 0;
    for (const auto& e : c.entries()) count += e.multiplicity;
    return {json{{"prime", m->prime()}, {"dim", m->dim()}, {"summands", encode(c)}, {"indecomposable_count", count}}};
}

Outcome cmd_idempotents(const json& in, const Config&)
{
    FgRing r = to_ring(need(in, "ring"), "ring");
    json classes = json::array();
    auto cls = enumerate_idempotents_conj(r);
    for (const auto& c : cls) classes.push_back(json{{"representative", encode(c.representative)}, {"size", c.size}});
    return {json{{"ring_size", encode(r.size())}, {"class_count", cls.size()}, {"classes", std::move(classes)}}};
}

json weights_json(const GradedIsoCheck& c)
{
    json w = json::array();
    for (const auto& x : c.weights) {
        json e{{"weight", x.weight}, {"verdict", std::string(to_string(x.verdict))}, {"reason", x.reason}};
        e["iso"] = x.iso ? encode(*x.iso) : json(nullptr);
        w.push_back(std::move(e));
    }
    json out{{"isomorphic", c.isomorphic}, {"weights", std::move(w)}};
    out["failing_weight"] = c.failing_weight ? json(*c.failing_weight) : json(nullptr);
    return out;
}

Outcome cmd_blowup(const json& in, const Config&)
{
    const long c = to_long(need(in, "codim"), "codim");
    if (c < 1 || c > 64) bad("codim must be in [1, 64]");
    BlowupReport r = verify_blowup_relation(to_graded(need(in, "X"), "X"), to_graded(need(in, "Y"), "Y"), to_graded(need(in, "Z"), "Z"),
                                            to_graded(need(in, "E"), "E"), static_cast<int>(c));
    json out{{"verified", r.verified},
             {"exceptional", weights_json(r.exceptional)},
             {"total", weights_json(r.total)},
             {"class_identity", r.class_identity}};
    out["failing_weight"] = r.failing_weight ? json(*r.failing_weight) : json(nullptr);
    return {out, r.verified ? 0 : 1};
}

json pieces_json(const std::vector<ClassPiece>& side)
{
    json out = json::array();
    for (const auto& p : side) out.push_back(json{{"object", encode(p.object)}, {"multiplicity", p.multiplicity}});
    return out;
}

Outcome cmd_class_reduce(const json& in, const Config&)
{
    const auto& terms = need(in, "terms");
    if (!terms.is_array()) bad("terms must be an array");
    std::vector<ClassTerm> expr;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string path = "terms[" + std::to_string(i) + "]";
        const auto& t = terms[i];
        ClassTerm ct;
        ct.coefficient = t.contains("coefficient") ? to_long(t["coefficient"], path + ".coefficient") : 1;
        ct.object = to_graded(need(t, "object"), path + ".object");
        ct.l_exponent = t.contains("l_exponent") ? static_cast<int>(to_long(t["l_exponent"], path + ".l_exponent")) : 0;
        expr.push_back(std::move(ct));
    }
    ClassReduction r = hdg_class_reduce(expr);
    json cancels = json::array();
    for (const auto& c : r.cancellations) cancels.push_back(json{{"weight", c.weight}, {"iso", encode(c.iso)}});
    return {json{{"empty", r.reduced.empty()},
                 {"positive", pieces_json(r.reduced.positive)},
                 {"negative", pieces_json(r.reduced.negative)},
                 {"cancellations", std::move(cancels)}}};
}

Outcome cmd_k3_kernel(const json& in, const Config&)
{
    K3Model k = k3_model(to_hodge(need(in, "T"), "T"), static_cast<std::size_t>(to_long(need(in, "ns_rank"), "ns_rank")));
    const auto& b = need(in, "brauer");
    BrauerClass a{to_int(need(b, "n"), "brauer.n"), to_int_vector(need(b, "alpha"), "brauer.alpha")};
    BrauerKernel r = brauer_kernel(k, a);
    return {json{{"basis", encode(r.basis)},
                 {"object", encode(r.object)},
                 {"index", encode(r.index)},
                 {"discriminant", encode(r.discriminant)},
                 {"t_discriminant", encode(k.discriminant)}}};
}

Outcome cmd_scalar_test(const json& in, const Config&)
{
    ScalarTest r = scalar_sublattice_test(to_hodge(need(in, "T"), "T"), to_int_matrix(need(in, "S"), "S"));
    json out{{"index", encode(r.index)}, {"end_trivial", r.end_trivial}};
    out["k"] = r.k ? encode(*r.k) : json(nullptr);
    out["non_isomorphic_certified"] = !r.k && r.end_trivial;
    return {out, r.k ? 0 : 1};
}

Outcome cmd_md_count(const json& in, const Config& cfg)
{
    RealQuadraticField f(to_long(need(in, "d"), "d"));
    MDReport r = md_orbit_count(f, to_int(need(in, "D"), "D"), cfg.search_factor);
    json primes = json::array();
    for (const auto& mp : r.primes)
        primes.push_back(json{{"p", encode(mp.rho.p)},
                              {"ideal", json{{"a", encode(mp.rho.ideal.a)}, {"b", encode(mp.rho.ideal.b)}, {"c", encode(mp.rho.ideal.c)}}},
                              {"residue_degree", mp.rho.residue_degree},
                              {"order_of_D", mp.order_of_d}});
    json verdicts = json::array();
    for (const auto& v : r.verdicts) {
        json e{{"exponents", v.exponents}, {"principal", v.generator.has_value()}};
        e["generator"] = v.generator ? encode(*v.generator) : json(nullptr);
        verdicts.push_back(std::move(e));
    }
    return {json{{"d", r.d},
                 {"D", encode(r.big_d)},
                 {"count", r.count},
                 {"bound", encode(r.bound)},
                 {"fundamental_unit", encode(fundamental_unit(f))},
                 {"primes", std::move(primes)},
                 {"verdicts", std::move(verdicts)}}};
}

Outcome cmd_unit_lift(const json& in, const Config&)
{
    FgRing s = to_ring(need(in, "source"), "source");
    FgRing t = to_ring(need(in, "target"), "target");
    RingMap f(s, t, to_int_matrix(need(in, "images"), "images"));
    UnitLifter lifter(f);
    IntVector u = to_int_vector(need(in, "unit"), "unit");
    IntVector r = lifter.lift(u);
    json out{{"lift", encode(r)}, {"image", encode(f.apply(r))}, {"mode", lifter.finite_mode() ? "finite" : "split"}};
    out["kernel_order"] = lifter.finite_mode() ? json(nullptr) : encode(lifter.kernel_order());
    return {out};
}

using Handler = std::function<Outcome(const json&, const Config&)>;

struct Command {
    Handler run;
    const char* help;
};

const std::map<std::string, Command>& handlers()
{
    static const std::map<std::string, Command> h{
        {"hom", {cmd_hom, "basis of Hom(X, Y)"}},
        {"retract", {cmd_retract, "retract certificates between X and Y"}},
        {"iso", {cmd_iso, "isomorphism X -> Y or a verdict"}},
        {"probe", {cmd_probe, "stable isomorphism probe of X and Y"}},
        {"decomp-p", {cmd_decomp_p, "indecomposable summands of X mod p"}},
        {"idempotents", {cmd_idempotents, "idempotent conjugacy classes of a finite ring"}},
        {"blowup-check", {cmd_blowup, "blow-up relation for graded Hodge objects"}},
        {"class-reduce", {cmd_class_reduce, "reduce a formal sum of Hodge classes"}},
        {"k3-kernel", {cmd_k3_kernel, "kernel lattice of a Brauer class"}},
        {"scalar-test", {cmd_scalar_test, "test whether a sublattice is k T"}},
        {"md-count", {cmd_md_count, "count M_D orbits in a real quadratic field"}},
        {"unit-lift", {cmd_unit_lift, "lift a unit along a ring surjection"}},
    };
    return h;
}

void write_text(std::ostream& out, const json& report)
{
    for (const char* key : {"tool", "version", "command"}) out << key << ": " << report[key].get<std::string>() << "\n";
    for (const char* section : {"config", "result"})
        for (const auto& [k, v] : report[section].items()) out << section << "." << k << ": " << v.dump() << "\n";
}

std::optional<std::uint64_t> seed_from_env()
{
    const char* s = std::getenv("K0LAT_SEED");
    if (!s || !*s) return std::nullopt;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (*end != '\0') throw Error(ErrorKind::InvalidInput, "K0LAT_SEED is not a nonnegative integer");
    return static_cast<std::uint64_t>(v);
}

std::uint64_t to_u64(const json& j, const char* name)
{
    Int v = to_int(j, name);
    if (v < 0 || !v.fits_ulong_p()) bad(std::string(name) + " must be a nonnegative 64-bit integer");
    return v.get_ui();
}

}  // namespace

int exit_code(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::NotSurjective:
    case ErrorKind::NotUnit:
    case ErrorKind::KernelInfinite:
    case ErrorKind::NotSplit:
        return 1;
    case ErrorKind::TooLarge:
    case ErrorKind::SearchBoundExceeded:
        return 3;
    default:
        return 2;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Lattice, K0 and Hodge-model computations", "k0lat"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string input;
    std::optional<std::uint64_t> seed, prime_bound, prime;
    std::optional<long> search_factor;
    std::string format = "json";
    app.add_option("--input", input, "problem file (JSON)")->required();
    app.add_option("--prime", prime, "prime for decomp-p");
    app.add_option("--prime-bound", prime_bound, "probe primes up to this bound");
    app.add_option("--seed", seed, "random seed (default: the input file, then K0LAT_SEED, then 0)");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--search-factor", search_factor, "principality search box factor")->check(CLI::PositiveNumber);
    app.set_version_flag("--version", kVersion);
    for (const auto& [name, c] : handlers()) app.add_subcommand(name, c.help);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    json in;
    try {
        if (input == "-") {
            in = json::parse(std::cin);
        } else {
            std::ifstream f(input);
            if (!f) {
                err << "k0lat: cannot open " << input << "\n";
                return 2;
            }
            in = json::parse(f);
        }
    } catch (const json::parse_error& e) {
        err << "k0lat: schema error: malformed JSON: " << e.what() << "\n";
        return 2;
    }

    Config cfg;
    cfg.format = format;
    json report;
    try {
        if (!in.is_object()) bad("top level must be an object");
        if (!in.contains("version") || in["version"] != 1) bad("\"version\": 1 is required");
        // flags override the file, the file overrides the environment
        if (seed) cfg.seed = *seed;
        else if (in.contains("seed")) cfg.seed = to_u64(in["seed"], "seed");
        else if (auto s = seed_from_env()) cfg.seed = *s;
        if (prime_bound) cfg.prime_bound = *prime_bound;
        else if (in.contains("prime_bound")) cfg.prime_bound = to_u64(in["prime_bound"], "prime_bound");
        cfg.prime = prime;
        if (search_factor) cfg.search_factor = *search_factor;
        else if (in.contains("search_factor")) cfg.search_factor = to_long(in["search_factor"], "search_factor");
        if (cfg.search_factor < 1) bad("search_factor must be positive");

        report = json{{"tool", "k0lat"},
                      {"version", kVersion},
                      {"command", command},
                      {"config",
                       json{{"seed", cfg.seed},
                            {"prime_bound", cfg.prime_bound},
                            {"prime", cfg.prime ? json(*cfg.prime) : json(nullptr)},
                            {"search_factor", cfg.search_factor}}}};
        Outcome o = handlers().at(command).run(in, cfg);
        report["result"] = std::move(o.result);
        if (cfg.format == "text") write_text(out, report);
        else out << report.dump(2) << "\n";
        return o.code;
    } catch (const Error& e) {
        err << "k0lat: " << e.what() << "\n";
        const int code = exit_code(e.kind());
        if (code != 2 && report.is_object()) {
            report["result"] = json{{"error", json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
            if (cfg.format == "text") write_text(out, report);
            else out << report.dump(2) << "\n";
        }
        return code;
    } catch (const json::exception& e) {
        err << "k0lat: schema error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace k0lat::cli
