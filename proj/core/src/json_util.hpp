#pragma once

// Internal JSON helpers (not installed). Serialization of reals uses "%.16e"
// (17 significant digits) so every double round-trips exactly through text,
// and files written with the same content are byte-identical.

#include <string>

#include <json.hpp>

namespace oqs::jsonio {

using Json = nlohmann::ordered_json;

/// 17-significant-digit decimal form of a finite double; throws on NaN/inf.
std::string format_real(double v);

/// Compact dump with every float emitted via format_real. Integers stay
/// integers; object key order is insertion order.
std::string dump(const Json& j);

/// [re, im] pair arrays for complex scalars.
Json complex_to_json(double re, double im);

}  // namespace oqs::jsonio
