#pragma once

// Naive dual complexes of presented snc divisors.
//
// One vertex per divisor D_i of the presentation and a simplex J whenever
// D_J is nonempty. Blowing up the stratum D_sigma is modelled by the star
// subdivision at sigma, the new vertex standing for the exceptional
// divisor. Strata are not split into irreducible components.

#include <string>
#include <vector>

#include "ramsplit/simplicial.hpp"

namespace ramsplit {

struct ExceptionalDivisor {
  std::string name;  // "E1", "E2", ... in blowup order
  VertexLabel vertex;
  Simplex source;    // the blown-up stratum
};

class DualComplex {
public:
  /// `divisors` lists every divisor name; facets may only mention those
  /// names, and divisors not mentioned become isolated vertices. Throws
  /// InputError when a facet uses an undeclared name or when
  /// dim >= ambient_dim.
  DualComplex(std::vector<std::string> divisors, const std::vector<std::vector<std::string>>& facets,
              int ambient_dim);
  DualComplex(SimplicialComplex complex, int ambient_dim,
              std::vector<ExceptionalDivisor> exceptional = {});

  const SimplicialComplex& complex() const { return complex_; }
  int ambient_dim() const { return ambient_dim_; }
  const std::vector<ExceptionalDivisor>& exceptional_log() const { return exceptional_; }

  /// Divisor label of a vertex: the token for originals, the E-name for
  /// logged exceptional divisors, otherwise the label's printed form.
  std::string divisor_name(const VertexLabel& v) const;

private:
  SimplicialComplex complex_;
  int ambient_dim_;
  std::vector<ExceptionalDivisor> exceptional_;
};

/// Blowup along D_sigma: star subdivision at sigma, logging the new vertex as
/// the next exceptional divisor. An empty sigma changes nothing.
DualComplex blowup(const DualComplex& d, const Simplex& sigma);

struct BlowupSequence {
  DualComplex result;
  std::vector<Simplex> trace; // blown-up strata, in order
};

/// Blows up every stratum D_sigma with |sigma| >= 2, deepest strata first
/// (largest |sigma|), lexicographically within a cardinality. The result's
/// complex is the barycentric subdivision of the input's.
BlowupSequence stratified_blowup_sequence(const DualComplex& d);

struct Presentation {
  /// Divisor names grouped into pairwise disjoint regular divisors.
  std::vector<std::vector<std::string>> groups;
  std::size_t length() const { return groups.size(); }
};

struct PresentationOptions {
  /// Append isolated dummy divisors ("P1", ...) until the length equals the
  /// ambient dimension (blowing up smooth points away from the divisor).
  bool pad_to_ambient = false;
};

/// After the stratified blowups, colours every vertex by the dimension of the
/// stratum it came from (originals get 0) and groups equal colours.
/// Throws InputError when dim(complex) > ambient_dim - 1.
Presentation reduce_presentation(const DualComplex& d, int ambient_dim,
                                 const PresentationOptions& options = {});

/// True when no group holds two vertices joined by an edge of d's complex.
/// Names not found in d (padding) count as isolated.
bool groups_are_independent(const DualComplex& d, const Presentation& p);

} // namespace ramsplit
