#ifndef K0LAT_JSON_IO_HPP
#define K0LAT_JSON_IO_HPP

#include <memory>
#include <string>

#include "json.hpp"
#include "k0lat/fg_ring.hpp"
#include "k0lat/hodgelat.hpp"
#include "k0lat/k0core.hpp"
#include "k0lat/modp.hpp"
#include "k0lat/quadfield.hpp"
#include "k0lat/zorder.hpp"

/* Conversions between library objects and the JSON interchange format.
 * Integers are decimal strings (plain JSON integers are accepted on input),
 * rationals are "p/q" strings, matrices are arrays of rows.  Decoders throw
 * Error(InvalidInput) naming the offending path. */
namespace k0lat::json_io {

using json = nlohmann::json;

Int to_int(const json& j, const std::string& path);
Rat to_rat(const json& j, const std::string& path);
long to_long(const json& j, const std::string& path);
IntVector to_int_vector(const json& j, const std::string& path);
IntMatrix to_int_matrix(const json& j, const std::string& path);
RatMatrix to_rat_matrix(const json& j, const std::string& path);

json encode(const Int& v);
json encode(const Rat& v);
json encode(const IntVector& v);
json encode(const IntMatrix& m);
json encode(const RatMatrix& m);
json encode(const FpMatrix& m);

/* {"integers": true} | {"quadratic": [a, b]} | {"rank", "table", "unit"} */
std::shared_ptr<const Order> to_order(const json& j, const std::string& path);
json encode(const Order& o);

/* {"regular": true} | {"actions": [...]} | {"sublattice": {"of": module, "basis": S}}
 * | {"conjugate": {"of": module, "by": U}} */
LatticeModule to_module(const json& j, const std::shared_ptr<const Order>& order, const std::string& path);
json encode(const LatticeModule& m);

json encode(const HomLattice& h);
json encode(const RetractCertificate& c);

/* {"zmod": n} | {"matrix_ring": [k, n]} | {"order": order, "mod": N} | {"moduli", "table", "unit"} */
FgRing to_ring(const json& j, const std::string& path);
json encode(const FgRing& r);

/* {"weight", "rank", "constraints"?, "gram"?}; {"sublattice": {"of": object, "basis": S}} */
HodgeObject to_hodge(const json& j, const std::string& path);
json encode(const HodgeObject& h);
/* Array of pure objects (summed per weight). */
GradedHodgeObject to_graded(const json& j, const std::string& path);
json encode(const GradedHodgeObject& g);

json encode(const QuadElement& e);
json encode(const K0ClassFp& c);

}  // namespace k0lat::json_io

#endif
