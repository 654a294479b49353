#include "ramsplit/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ramsplit::json_io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field \"") + key + "\"");
  return *it;
}

Int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  return j.get<Int>();
}

std::size_t as_index(const json& j, const char* what) {
  const Int v = as_int(j, what);
  if (v < 1) throw InputError(std::string(what) + " must be a 1-based index");
  return static_cast<std::size_t>(v - 1);
}

const json& as_array(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  return j;
}

std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) throw InputError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

json facets_json(const SimplicialComplex& c) {
  json out = json::array();
  for (const auto& f : c.facets()) out.push_back(to_json(f));
  return out;
}

std::vector<Simplex> facets_from(const json& j) {
  std::vector<Simplex> gens;
  for (const auto& f : as_array(j, "facets")) gens.push_back(simplex_from_json(f));
  return gens;
}

void collect_originals(const VertexLabel& v, std::set<std::string>& out) {
  if (v.is_original()) {
    out.insert(v.name());
    return;
  }
  for (const auto& w : v.simplex()) collect_originals(w, out);
}

Monomial monomial_from_json(const json& j, std::size_t d) {
  Monomial m;
  if (j.contains("u")) m.unit = as_string(j["u"], "unit token");
  for (const auto& e : as_array(field(j, "e"), "exponent vector")) m.exponents.push_back(as_int(e, "exponent"));
  if (m.exponents.size() != d) throw InputError("exponent vector must have length " + std::to_string(d));
  return m;
}

} // namespace

json load_payload(const std::string& text) {
  const auto start = text.find_first_not_of(" \t\r\n");
  std::string body;
  if (start != std::string::npos && (text[start] == '{' || text[start] == '[')) {
    body = text;
  } else {
    std::ifstream in(text);
    if (!in) throw InputError("cannot read payload file " + text);
    std::ostringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

json one_based(const std::vector<std::size_t>& v) {
  json out = json::array();
  for (auto i : v) out.push_back(i + 1);
  return out;
}

std::vector<std::size_t> zero_based(const json& j) {
  std::vector<std::size_t> out;
  for (const auto& x : as_array(j, "index list")) out.push_back(as_index(x, "index"));
  return out;
}

json to_json(const IntMatrix& m) {
  return {{"n", m.rows()}, {"d", m.cols()}, {"entries", m.to_rows()}};
}

IntMatrix matrix_from_json(const json& j) {
  const json& rows = j.is_array() ? j : field(j, "entries");
  std::vector<std::vector<Int>> entries;
  for (const auto& r : as_array(rows, "entries")) {
    std::vector<Int> row;
    for (const auto& x : as_array(r, "matrix row")) row.push_back(as_int(x, "matrix entry"));
    entries.push_back(std::move(row));
  }
  IntMatrix m = IntMatrix::from_rows(entries);
  if (j.is_object()) {
    if (j.contains("n") && as_int(j["n"], "n") != static_cast<Int>(m.rows()))
      throw InputError("\"n\" does not match the number of rows");
    if (j.contains("d") && as_int(j["d"], "d") != static_cast<Int>(m.cols()))
      throw InputError("\"d\" does not match the number of columns");
  }
  return m;
}

json to_json(const CheckReport& r) {
  json out{{"verdict", r.verdict}, {"witness", nullptr}};
  if (r.witness) {
    out["witness"] = {{"I", one_based(r.witness->rows)},
                      {"J", one_based(r.witness->cols)},
                      {"submatrix", r.witness->submatrix.to_rows()},
                      {"rank", r.witness->rank}};
  }
  return out;
}

json to_json(const BadPrimeSet& s) {
  if (s.all_primes) return {{"all_primes", true}, {"primes", nullptr}};
  return {{"all_primes", false}, {"primes", s.primes}};
}

json to_json(const SearchResult& r) {
  return {{"found", r.found ? to_json(r.found->matrix()) : json(nullptr)},
          {"examined", r.examined},
          {"visited", r.visited}};
}

json to_json(const ExponentBound& b) {
  return {{"exponent", b.exponent}, {"rows", b.rows}, {"matrix", b.matrix_name}};
}

json to_json(const VertexLabel& v) {
  if (v.is_original()) return v.name();
  return to_json(v.simplex());
}

VertexLabel label_from_json(const json& j) {
  if (j.is_string()) return VertexLabel::original(j.get<std::string>());
  if (j.is_array()) return VertexLabel::barycenter(simplex_from_json(j));
  throw InputError("a vertex is a name or an array of vertices");
}

json to_json(const Simplex& s) {
  json out = json::array();
  for (const auto& v : s) out.push_back(to_json(v));
  return out;
}

Simplex simplex_from_json(const json& j) {
  std::vector<VertexLabel> labels;
  for (const auto& v : as_array(j, "simplex")) labels.push_back(label_from_json(v));
  return make_simplex(std::move(labels));
}

json to_json(const SimplicialComplex& c) { return {{"facets", facets_json(c)}}; }

SimplicialComplex complex_from_json(const json& j) {
  return SimplicialComplex::from_facets(facets_from(field(j, "facets")));
}

json to_json(const IsoCheck& r) {
  json pairs = json::array();
  for (const auto& [from, to] : r.bijection) pairs.push_back({to_json(from), to_json(to)});
  return {{"isomorphic", r.isomorphic},
          {"bijection", pairs},
          {"counterexample", r.counterexample ? to_json(*r.counterexample) : json(nullptr)}};
}

json to_json(const Coloring& c) {
  json colors = json::array();
  for (const auto& [v, colour] : c.colors) colors.push_back({{"vertex", to_json(v)}, {"color", colour}});
  return {{"colors", colors}, {"valid", c.valid}};
}

json to_json(const DualComplex& d) {
  // every original name, including ones only left inside barycenters
  std::set<std::string> names;
  for (const auto& v : d.complex().vertices()) collect_originals(v, names);
  const json divisors = names;
  json exceptional = json::array();
  for (const auto& e : d.exceptional_log())
    exceptional.push_back({{"name", e.name}, {"vertex", to_json(e.vertex)}, {"source", to_json(e.source)}});
  return {{"ambient_dim", d.ambient_dim()},
          {"divisors", divisors},
          {"facets", facets_json(d.complex())},
          {"exceptional", exceptional}};
}

DualComplex dual_from_json(const json& j) {
  const int ambient = static_cast<int>(as_int(field(j, "ambient_dim"), "ambient_dim"));
  std::vector<std::string> divisors;
  for (const auto& name : as_array(field(j, "divisors"), "divisors")) divisors.push_back(as_string(name, "divisor"));
  const std::set<std::string> declared(divisors.begin(), divisors.end());
  if (declared.size() != divisors.size()) throw InputError("divisor names must be distinct");

  std::vector<Simplex> gens = j.contains("facets") ? facets_from(j["facets"]) : std::vector<Simplex>{};
  std::set<std::string> mentioned;
  for (const auto& s : gens)
    for (const auto& v : s) collect_originals(v, mentioned);
  for (const auto& name : mentioned)
    if (!declared.count(name)) throw InputError("facet mentions undeclared divisor " + name);
  for (const auto& name : divisors)
    if (!mentioned.count(name)) gens.push_back(Simplex{VertexLabel::original(name)});

  std::vector<ExceptionalDivisor> log;
  if (j.contains("exceptional")) {
    for (const auto& e : as_array(j["exceptional"], "exceptional"))
      log.push_back({as_string(field(e, "name"), "name"), label_from_json(field(e, "vertex")),
                     simplex_from_json(field(e, "source"))});
  }
  return DualComplex(SimplicialComplex::from_facets(std::move(gens)), ambient, std::move(log));
}

json to_json(const BlowupSequence& s) {
  json trace = json::array();
  for (const auto& sigma : s.trace) trace.push_back(to_json(sigma));
  return {{"result", to_json(s.result)}, {"trace", trace}};
}

json to_json(const Presentation& p) { return {{"groups", p.groups}, {"length", p.length()}}; }

json to_json(const SymbolClass& a) {
  json units = json::array();
  for (const auto& [key, c] : a.unit_terms()) units.push_back({{"u", key.first}, {"i", key.second + 1}, {"c", c}});
  json pairs = json::array();
  for (const auto& [key, m] : a.pair_terms())
    pairs.push_back({{"i", key.first + 1}, {"j", key.second + 1}, {"m", m}});
  return {{"l", a.modulus().value()},
          {"d", a.d()},
          {"alpha0", a.unramified_part()},
          {"units", units},
          {"pairs", pairs}};
}

SymbolClass symbol_from_json(const json& j) {
  const PrimeModulus l(as_int(field(j, "l"), "l"));
  const Int d = as_int(field(j, "d"), "d");
  if (d < 1) throw InputError("d must be positive");
  SymbolClass a(l, static_cast<std::size_t>(d),
                j.contains("alpha0") ? as_string(j["alpha0"], "alpha0") : "alpha0");
  if (j.contains("units"))
    for (const auto& t : as_array(j["units"], "units"))
      a.add_unit_term(as_string(field(t, "u"), "unit token"), as_index(field(t, "i"), "i"),
                      as_int(field(t, "c"), "c"));
  if (j.contains("pairs"))
    for (const auto& t : as_array(j["pairs"], "pairs"))
      a.add_pair_term(as_index(field(t, "i"), "i"), as_index(field(t, "j"), "j"),
                      as_int(field(t, "m"), "m"));
  return a;
}

SymbolClass normal_form_from_json(const json& j) {
  const PrimeModulus l(as_int(field(j, "l"), "l"));
  const Int d = as_int(field(j, "d"), "d");
  if (d < 1) throw InputError("d must be positive");
  const auto dd = static_cast<std::size_t>(d);
  std::vector<RawSymbol> raw;
  for (const auto& s : as_array(field(j, "symbols"), "symbols"))
    raw.push_back({monomial_from_json(field(s, "f"), dd), monomial_from_json(field(s, "g"), dd),
                   s.contains("c") ? as_int(s["c"], "c") : 1});
  return normal_form(raw, dd, l, j.contains("alpha0") ? as_string(j["alpha0"], "alpha0") : "alpha0");
}

json to_json(const Residue& r) {
  json units = json::array();
  for (const auto& [u, c] : r.units) units.push_back({{"u", u}, {"c", c}});
  return {{"units", units}, {"coordinates", r.coordinates}, {"zero", r.is_zero()}};
}

json to_json(const StratumPoint& z) { return {{"J", one_based(z.j())}, {"Iprime", one_based(z.i_prime())}}; }

StratumPoint stratum_from_json(const json& j, std::size_t d) {
  return StratumPoint(zero_based(field(j, "J")), j.contains("Iprime") ? zero_based(j["Iprime"]) : std::vector<std::size_t>{},
                      d);
}

json to_json(const SplittingCertificate& c) {
  json b = json::array();
  for (const auto& [j, bj] : c.b) b.push_back({{"j", j + 1}, {"b", bj}});
  return {{"j0", c.j0 + 1}, {"I", one_based(c.rows)}, {"a", c.a}, {"r", c.r}, {"b", b}};
}

SplittingCertificate certificate_from_json(const json& j) {
  SplittingCertificate c;
  c.j0 = as_index(field(j, "j0"), "j0");
  c.rows = zero_based(field(j, "I"));
  for (const auto& x : as_array(field(j, "a"), "a")) c.a.push_back(as_int(x, "a_i"));
  c.r = as_int(field(j, "r"), "r");
  for (const auto& t : as_array(field(j, "b"), "b"))
    c.b.emplace_back(as_index(field(t, "j"), "j"), as_int(field(t, "b"), "b_j"));
  return c;
}

json to_json(const UniversalReport& r) {
  json attempts = json::array();
  for (const auto& a : r.attempts)
    attempts.push_back({{"J", one_based(a.j)},
                        {"j0", a.j0 + 1},
                        {"Iprime", one_based(a.i_prime)},
                        {"certificate", a.certificate ? to_json(*a.certificate) : json(nullptr)}});
  json failure = nullptr;
  if (r.first_failure) failure = attempts[*r.first_failure];
  return {{"splits", r.splits}, {"checked", r.attempts.size()}, {"first_failure", failure}, {"attempts", attempts}};
}

} // namespace ramsplit::json_io
