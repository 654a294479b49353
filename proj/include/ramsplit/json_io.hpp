#pragma once

// JSON encodings used by the command-line tool. Indices are 1-based in JSON
// and 0-based in the library; every conversion lives here.
//
// Vertex labels: an original vertex is a string, a barycenter is the array
// of labels of its simplex (nested for iterated subdivisions).

#include <string>
#include <vector>

#include <json.hpp>

#include "ramsplit/dualcomplex.hpp"
#include "ramsplit/pirutka.hpp"
#include "ramsplit/simplicial.hpp"
#include "ramsplit/splitting.hpp"

namespace ramsplit::json_io {

using nlohmann::json;

/// Inline JSON when the text starts with '{' or '[', otherwise a file path.
/// Throws InputError on unreadable files or malformed JSON.
json load_payload(const std::string& text);

json to_json(const IntMatrix& m);
/// {"n", "d", "entries"}; n and d are optional but must match when given.
IntMatrix matrix_from_json(const json& j);

json to_json(const CheckReport& r);
json to_json(const BadPrimeSet& s);
json to_json(const SearchResult& r);
json to_json(const ExponentBound& b);

json to_json(const VertexLabel& v);
VertexLabel label_from_json(const json& j);
json to_json(const Simplex& s);
Simplex simplex_from_json(const json& j);

/// {"facets": [...]}
json to_json(const SimplicialComplex& c);
SimplicialComplex complex_from_json(const json& j);

json to_json(const IsoCheck& r);
json to_json(const Coloring& c);

/// {"ambient_dim", "divisors", "facets", "exceptional"}. On input
/// "divisors" names the original divisors; facets may only use those names
/// (or barycenters built from them) and unused divisors become isolated.
/// "exceptional" is optional.
json to_json(const DualComplex& d);
DualComplex dual_from_json(const json& j);

json to_json(const BlowupSequence& s);
json to_json(const Presentation& p);

/// {"l", "d", "alpha0", "units": [{"u","i","c"}], "pairs": [{"i","j","m"}]}
json to_json(const SymbolClass& a);
SymbolClass symbol_from_json(const json& j);

/// {"l", "d", "alpha0"?, "symbols": [{"f": {"u","e"}, "g": {...}, "c"}]}
SymbolClass normal_form_from_json(const json& j);

json to_json(const Residue& r);

/// {"J", "Iprime"}
json to_json(const StratumPoint& z);
StratumPoint stratum_from_json(const json& j, std::size_t d);

/// {"j0", "I", "a", "r", "b": [{"j","b"}]}
json to_json(const SplittingCertificate& c);
SplittingCertificate certificate_from_json(const json& j);

json to_json(const UniversalReport& r);

/// 1-based index list <-> 0-based indices. Throws InputError on entries < 1.
json one_based(const std::vector<std::size_t>& v);
std::vector<std::size_t> zero_based(const json& j);

} // namespace ramsplit::json_io
