#pragma once

// Finite abstract simplicial complexes with structured vertex labels, star
// and barycentric subdivision, the order (flag) complex, and the dimension
// colouring of an order complex.

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ramsplit/errors.hpp"

namespace ramsplit {

class VertexLabel;

/// A simplex: a nonempty, strictly increasing vector of labels.
using Simplex = std::vector<VertexLabel>;

/// Either an original vertex (an opaque token) or the barycenter e_sigma
/// introduced by subdividing at sigma. Immutable; copies share the nested
/// simplex. Originals order before barycenters.
class VertexLabel {
public:
  static VertexLabel original(std::string name);
  /// `simplex` is sorted and deduplicated; throws InputError if empty.
  static VertexLabel barycenter(Simplex simplex);

  bool is_original() const { return simplex_ == nullptr; }
  const std::string& name() const { return name_; }
  /// Only valid for barycenters.
  const Simplex& simplex() const { return *simplex_; }

  friend std::strong_ordering operator<=>(const VertexLabel& a, const VertexLabel& b);
  friend bool operator==(const VertexLabel& a, const VertexLabel& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  std::string to_string() const;

private:
  std::string name_;
  std::shared_ptr<const Simplex> simplex_;
};

Simplex make_simplex(std::vector<VertexLabel> labels);
Simplex originals(std::initializer_list<const char*> names);

/// True when `sub` ⊆ `super` (both sorted).
bool is_face(const Simplex& sub, const Simplex& super);

inline constexpr std::size_t kMaxVertices = 32;
inline constexpr int kMaxDimension = 4;

class SimplicialComplex {
public:
  SimplicialComplex() = default;

  /// Closes the given simplices under nonempty subsets. Throws InputError on
  /// an empty simplex or dimension above kMaxDimension.
  static SimplicialComplex from_facets(std::vector<Simplex> generators);

  /// Every simplex, ordered by (size, lexicographic).
  const std::vector<Simplex>& simplices() const { return simplices_; }
  /// Maximal simplices, ordered like simplices().
  std::vector<Simplex> facets() const;
  /// Derived as the union of all simplices.
  std::vector<VertexLabel> vertices() const;
  std::vector<Simplex> simplices_of_dimension(int i) const;

  bool contains(const Simplex& s) const;
  bool has_vertex(const VertexLabel& v) const;
  bool empty() const { return simplices_.empty(); }
  /// -1 for the empty complex.
  int dimension() const;
  std::size_t vertex_count() const;

  /// True when every nonempty subset of a member is a member.
  bool is_closed() const;

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

private:
  std::vector<Simplex> simplices_;
};

/// Throws InputError beyond kMaxVertices vertices or kMaxDimension.
void enforce_desk_limits(const SimplicialComplex& c);

/// Sigma * sigma: simplices not containing sigma, plus (tau \ J) ∪ {e_sigma}
/// for every nonempty J ⊆ sigma ⊆ tau. An empty sigma returns the input.
/// Throws InputError when sigma is not a simplex or e_sigma already is a
/// vertex.
SimplicialComplex star_subdivision(const SimplicialComplex& c, const Simplex& sigma);

/// Iterated star subdivision at all simplices of dimension D, D-1, ..., 1.
SimplicialComplex barycentric(const SimplicialComplex& c);

/// One vertex barycenter(sigma) per simplex sigma; simplices are the chains
/// under strict inclusion.
SimplicialComplex order_complex(const SimplicialComplex& c);

struct IsoCheck {
  bool isomorphic = false;
  /// barycentric vertex -> order-complex vertex
  std::vector<std::pair<VertexLabel, VertexLabel>> bijection;
  /// A simplex of barycentric(c) whose image is not a chain, or (when the
  /// images are all chains) a chain that is not hit.
  std::optional<Simplex> counterexample;
};

/// Builds the map v -> {v}, e_sigma -> sigma from barycentric(c) to
/// order_complex(c) and checks it is a simplicial isomorphism.
IsoCheck check_natural_iso(const SimplicialComplex& c);

struct Coloring {
  std::map<VertexLabel, int> colors;
  bool valid = false; // no simplex repeats a colour
};

/// A random complex on at most max_vertices vertices v0, v1, ... with
/// dimension at most max_dim. Uses raw engine output only, so a seed gives
/// the same complex on every platform.
SimplicialComplex random_complex(std::mt19937_64& rng, std::size_t max_vertices, int max_dim);

/// Colours each vertex barycenter(sigma) of an order complex by
/// dim(sigma). Throws InputError on an original vertex.
Coloring color_by_dimension(const SimplicialComplex& order);

} // namespace ramsplit
