#include "ramsplit/dualcomplex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace ramsplit {

namespace {

void check_dimension(const SimplicialComplex& c, int ambient_dim) {
  if (ambient_dim < 1) throw InputError("ambient dimension must be positive");
  if (c.dimension() > ambient_dim - 1)
    throw InputError("dual complex of dimension " + std::to_string(c.dimension()) +
                     " does not fit ambient dimension " + std::to_string(ambient_dim));
}

} // namespace

DualComplex::DualComplex(std::vector<std::string> divisors,
                         const std::vector<std::vector<std::string>>& facets, int ambient_dim)
    : ambient_dim_(ambient_dim) {
  const std::set<std::string> declared(divisors.begin(), divisors.end());
  if (declared.size() != divisors.size()) throw InputError("divisor names must be distinct");
  std::set<std::string> mentioned;
  std::vector<Simplex> gens;
  for (const auto& f : facets) {
    std::vector<VertexLabel> labels;
    for (const auto& name : f) {
      if (!declared.count(name)) throw InputError("facet mentions undeclared divisor " + name);
      mentioned.insert(name);
      labels.push_back(VertexLabel::original(name));
    }
    gens.push_back(make_simplex(std::move(labels)));
  }
  for (const auto& name : divisors)
    if (!mentioned.count(name)) gens.push_back(Simplex{VertexLabel::original(name)});
  complex_ = SimplicialComplex::from_facets(std::move(gens));
  check_dimension(complex_, ambient_dim_);
}

DualComplex::DualComplex(SimplicialComplex complex, int ambient_dim,
                         std::vector<ExceptionalDivisor> exceptional)
    : complex_(std::move(complex)), ambient_dim_(ambient_dim), exceptional_(std::move(exceptional)) {
  check_dimension(complex_, ambient_dim_);
}

std::string DualComplex::divisor_name(const VertexLabel& v) const {
  if (v.is_original()) return v.name();
  for (const auto& e : exceptional_)
    if (e.vertex == v) return e.name;
  return v.to_string();
}

DualComplex blowup(const DualComplex& d, const Simplex& sigma) {
  if (sigma.empty()) return d;
  SimplicialComplex next = star_subdivision(d.complex(), sigma);
  auto log = d.exceptional_log();
  log.push_back({"E" + std::to_string(log.size() + 1), VertexLabel::barycenter(sigma), sigma});
  return DualComplex(std::move(next), d.ambient_dim(), std::move(log));
}

BlowupSequence stratified_blowup_sequence(const DualComplex& d) {
  BlowupSequence out{d, {}};
  const auto& original = d.complex();
  for (int dim = original.dimension(); dim >= 1; --dim) {
    for (const auto& sigma : original.simplices_of_dimension(dim)) {
      out.result = blowup(out.result, sigma);
      out.trace.push_back(sigma);
    }
  }
  return out;
}

Presentation reduce_presentation(const DualComplex& d, int ambient_dim,
                                 const PresentationOptions& options) {
  check_dimension(d.complex(), ambient_dim);
  const BlowupSequence seq = stratified_blowup_sequence(d);

  // colour through Sd ≅ Fl
  const IsoCheck iso = check_natural_iso(d.complex());
  if (!iso.isomorphic) throw std::logic_error("barycentric and order complex disagree");
  const Coloring coloring = color_by_dimension(order_complex(d.complex()));

  std::map<int, std::vector<std::string>> classes;
  for (const auto& [sd_vertex, fl_vertex] : iso.bijection) {
    if (!seq.result.complex().has_vertex(sd_vertex))
      throw std::logic_error("blowup sequence and barycentric subdivision disagree");
    classes[coloring.colors.at(fl_vertex)].push_back(seq.result.divisor_name(sd_vertex));
  }

  Presentation p;
  for (auto& [colour, names] : classes) {
    std::sort(names.begin(), names.end());
    p.groups.push_back(std::move(names));
  }
  if (options.pad_to_ambient) {
    std::set<std::string> used;
    for (const auto& g : p.groups) used.insert(g.begin(), g.end());
    int k = 1;
    while (static_cast<int>(p.groups.size()) < ambient_dim) {
      std::string name = "P" + std::to_string(k++);
      if (used.count(name)) continue;
      p.groups.push_back({name});
    }
  }
  return p;
}

bool groups_are_independent(const DualComplex& d, const Presentation& p) {
  std::map<std::string, VertexLabel> by_name;
  for (const auto& v : d.complex().vertices()) by_name.emplace(d.divisor_name(v), v);
  for (const auto& group : p.groups) {
    std::vector<VertexLabel> members;
    for (const auto& name : group) {
      auto it = by_name.find(name);
      if (it != by_name.end()) members.push_back(it->second); // padding is isolated
    }
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b)
        if (d.complex().contains(make_simplex({members[a], members[b]}))) return false;
  }
  return true;
}

} // namespace ramsplit
