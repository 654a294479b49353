#include "ramsplit/simplicial.hpp"

#include <algorithm>
#include <set>

namespace ramsplit {

VertexLabel VertexLabel::original(std::string name) {
  VertexLabel v;
  v.name_ = std::move(name);
  return v;
}

VertexLabel VertexLabel::barycenter(Simplex simplex) {
  simplex = make_simplex(std::move(simplex));
  VertexLabel v;
  v.simplex_ = std::make_shared<const Simplex>(std::move(simplex));
  return v;
}

std::strong_ordering operator<=>(const VertexLabel& a, const VertexLabel& b) {
  if (a.is_original() != b.is_original())
    return a.is_original() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.is_original()) return a.name_ <=> b.name_;
  if (a.simplex_ == b.simplex_) return std::strong_ordering::equal;
  return std::lexicographical_compare_three_way(a.simplex_->begin(), a.simplex_->end(),
                                                b.simplex_->begin(), b.simplex_->end());
}

std::string VertexLabel::to_string() const {
  if (is_original()) return name_;
  std::string s = "e{";
  for (std::size_t i = 0; i < simplex_->size(); ++i) {
    if (i) s += ",";
    s += (*simplex_)[i].to_string();
  }
  return s + "}";
}

Simplex make_simplex(std::vector<VertexLabel> labels) {
  if (labels.empty()) throw InputError("simplices must be nonempty");
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

Simplex originals(std::initializer_list<const char*> names) {
  std::vector<VertexLabel> labels;
  for (const char* n : names) labels.push_back(VertexLabel::original(n));
  return make_simplex(std::move(labels));
}

bool is_face(const Simplex& sub, const Simplex& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

namespace {

bool size_then_lex(const Simplex& a, const Simplex& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Simplex with_vertex(Simplex s, const VertexLabel& v) {
  s.insert(std::upper_bound(s.begin(), s.end(), v), v);
  return s;
}

} // namespace

SimplicialComplex SimplicialComplex::from_facets(std::vector<Simplex> generators) {
  std::set<Simplex> family;
  for (auto& g : generators) {
    Simplex s = make_simplex(std::move(g));
    if (static_cast<int>(s.size()) - 1 > kMaxDimension)
      throw InputError("simplex dimension " + std::to_string(s.size() - 1) +
                       " exceeds the limit " + std::to_string(kMaxDimension));
    const std::size_t k = s.size();
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      Simplex face;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (1u << i)) face.push_back(s[i]);
      family.insert(std::move(face));
    }
  }
  SimplicialComplex c;
  c.simplices_.assign(family.begin(), family.end());
  std::sort(c.simplices_.begin(), c.simplices_.end(), size_then_lex);
  return c;
}

std::vector<Simplex> SimplicialComplex::facets() const {
  std::vector<Simplex> out;
  for (const auto& s : simplices_) {
    const bool maximal = std::none_of(simplices_.begin(), simplices_.end(), [&](const Simplex& t) {
      return t.size() > s.size() && is_face(s, t);
    });
    if (maximal) out.push_back(s);
  }
  return out;
}

std::vector<VertexLabel> SimplicialComplex::vertices() const {
  std::vector<VertexLabel> out;
  for (const auto& s : simplices_) {
    if (s.size() != 1) break; // singletons come first
    out.push_back(s.front());
  }
  return out;
}

std::size_t SimplicialComplex::vertex_count() const { return vertices().size(); }

std::vector<Simplex> SimplicialComplex::simplices_of_dimension(int i) const {
  std::vector<Simplex> out;
  for (const auto& s : simplices_)
    if (static_cast<int>(s.size()) == i + 1) out.push_back(s);
  return out;
}

bool SimplicialComplex::contains(const Simplex& s) const {
  return std::binary_search(simplices_.begin(), simplices_.end(), s, size_then_lex);
}

bool SimplicialComplex::has_vertex(const VertexLabel& v) const { return contains(Simplex{v}); }

int SimplicialComplex::dimension() const {
  return simplices_.empty() ? -1 : static_cast<int>(simplices_.back().size()) - 1;
}

bool SimplicialComplex::is_closed() const {
  for (const auto& s : simplices_) {
    if (s.size() < 2) continue;
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
      if (!contains(face)) return false;
    }
  }
  return true;
}

void enforce_desk_limits(const SimplicialComplex& c) {
  if (c.vertex_count() > kMaxVertices)
    throw InputError("complex has " + std::to_string(c.vertex_count()) +
                     " vertices, limit is " + std::to_string(kMaxVertices));
  if (c.dimension() > kMaxDimension)
    throw InputError("complex dimension exceeds " + std::to_string(kMaxDimension));
}

SimplicialComplex star_subdivision(const SimplicialComplex& c, const Simplex& sigma) {
  if (sigma.empty()) return c;
  if (!c.contains(sigma)) throw InputError("star subdivision at a simplex not in the complex");
  const VertexLabel e = VertexLabel::barycenter(sigma);
  if (c.has_vertex(e)) throw InputError("barycenter " + e.to_string() + " is already a vertex");

  std::vector<Simplex> out;
  for (const auto& tau : c.simplices()) {
    if (!is_face(sigma, tau)) {
      out.push_back(tau);
      continue;
    }
    // (tau \ J) ∪ {e} for nonempty J ⊆ sigma
    const std::size_t k = sigma.size();
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      Simplex rest;
      std::size_t next = 0;
      for (const auto& v : tau) {
        while (next < k && sigma[next] < v) ++next;
        const bool in_j = next < k && sigma[next] == v && (mask & (1u << next));
        if (!in_j) rest.push_back(v);
      }
      out.push_back(with_vertex(std::move(rest), e));
    }
  }
  return SimplicialComplex::from_facets(std::move(out));
}

SimplicialComplex barycentric(const SimplicialComplex& c) {
  enforce_desk_limits(c);
  SimplicialComplex cur = c;
  for (int i = c.dimension(); i >= 1; --i)
    for (const auto& sigma : c.simplices_of_dimension(i)) cur = star_subdivision(cur, sigma);
  return cur;
}

SimplicialComplex order_complex(const SimplicialComplex& c) {
  enforce_desk_limits(c);
  // maximal chains: one per facet and ordering of its vertices
  std::vector<Simplex> chains;
  for (auto facet : c.facets()) {
    do {
      std::vector<VertexLabel> chain;
      Simplex prefix;
      for (const auto& v : facet) {
        prefix = with_vertex(std::move(prefix), v);
        chain.push_back(VertexLabel::barycenter(prefix));
      }
      chains.push_back(make_simplex(std::move(chain)));
    } while (std::next_permutation(facet.begin(), facet.end()));
  }
  return SimplicialComplex::from_facets(std::move(chains));
}

IsoCheck check_natural_iso(const SimplicialComplex& c) {
  const SimplicialComplex sd = barycentric(c);
  const SimplicialComplex fl = order_complex(c);

  IsoCheck out;
  std::map<VertexLabel, VertexLabel> phi;
  std::set<VertexLabel> image;
  for (const auto& v : sd.vertices()) {
    VertexLabel target = c.has_vertex(v) ? VertexLabel::barycenter(Simplex{v}) : v;
    out.bijection.emplace_back(v, target);
    image.insert(target);
    phi.emplace(v, std::move(target));
  }
  const auto fl_vertices = fl.vertices();
  if (image.size() != phi.size() || image != std::set<VertexLabel>(fl_vertices.begin(), fl_vertices.end())) {
    // first order-complex vertex that is not hit, or a collision
    for (const auto& w : fl_vertices)
      if (!image.count(w)) {
        out.counterexample = Simplex{w};
        return out;
      }
    out.counterexample = Simplex{sd.vertices().front()};
    return out;
  }
  for (const auto& s : sd.simplices()) {
    std::vector<VertexLabel> mapped;
    for (const auto& v : s) mapped.push_back(phi.at(v));
    if (!fl.contains(make_simplex(std::move(mapped)))) {
      out.counterexample = s;
      return out;
    }
  }
  // injective on vertices, so injective on simplices; equal counts => onto
  if (sd.simplices().size() != fl.simplices().size()) {
    std::set<Simplex> hit;
    for (const auto& s : sd.simplices()) {
      std::vector<VertexLabel> mapped;
      for (const auto& v : s) mapped.push_back(phi.at(v));
      hit.insert(make_simplex(std::move(mapped)));
    }
    for (const auto& t : fl.simplices())
      if (!hit.count(t)) {
        out.counterexample = t;
        return out;
      }
  }
  out.isomorphic = true;
  return out;
}

Coloring color_by_dimension(const SimplicialComplex& order) {
  Coloring out;
  for (const auto& v : order.vertices()) {
    if (v.is_original())
      throw InputError("vertex " + v.to_string() + " is not labelled by a simplex");
    out.colors.emplace(v, static_cast<int>(v.simplex().size()) - 1);
  }
  out.valid = std::all_of(order.simplices().begin(), order.simplices().end(), [&](const Simplex& s) {
    std::set<int> seen;
    for (const auto& v : s)
      if (!seen.insert(out.colors.at(v)).second) return false;
    return true;
  });
  return out;
}

SimplicialComplex random_complex(std::mt19937_64& rng, std::size_t max_vertices, int max_dim) {
  if (max_vertices == 0 || max_dim < 0) throw InputError("random_complex needs room for a vertex");
  const std::size_t nv = 1 + rng() % max_vertices;
  const std::size_t top = std::min<std::size_t>(static_cast<std::size_t>(max_dim) + 1, nv);
  const std::size_t nfacets = 1 + rng() % (2 * nv);
  std::vector<Simplex> gens;
  for (std::size_t v = 0; v < nv; ++v) gens.push_back(Simplex{VertexLabel::original("v" + std::to_string(v))});
  for (std::size_t f = 0; f < nfacets; ++f) {
    const std::size_t size = 1 + rng() % top;
    std::vector<VertexLabel> labels;
    while (labels.size() < size) {
      auto v = VertexLabel::original("v" + std::to_string(rng() % nv));
      if (std::find(labels.begin(), labels.end(), v) == labels.end()) labels.push_back(std::move(v));
    }
    gens.push_back(make_simplex(std::move(labels)));
  }
  return SimplicialComplex::from_facets(std::move(gens));
}

} // namespace ramsplit
