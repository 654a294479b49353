#pragma once

// l-Pirutka matrices.
//
// An n x d integer matrix T (n >= d) is l-Pirutka when every submatrix
// T[I,J] with J nonempty and |I| - |J| = n - d has full column rank |J|
// modulo l. Row and column indices in this API are 0-based.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ramsplit/zmodl.hpp"

namespace ramsplit {

class PirutkaCandidate {
public:
  /// Throws InputError when rows < cols.
  explicit PirutkaCandidate(IntMatrix t);

  const IntMatrix& matrix() const { return t_; }
  std::size_t n() const { return t_.rows(); }
  std::size_t d() const { return t_.cols(); }

  friend bool operator==(const PirutkaCandidate&, const PirutkaCandidate&) = default;

private:
  IntMatrix t_;
};

/// A failing submatrix: rows I, columns J, T[I,J] and its rank mod l.
struct PirutkaWitness {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  IntMatrix submatrix;
  std::size_t rank = 0;
};

struct CheckReport {
  bool verdict = true;
  /// Present iff verdict is false. The least failing pair under the
  /// ordering (|J|, J, I), J and I compared lexicographically.
  std::optional<PirutkaWitness> witness;
};

CheckReport is_pirutka(const PirutkaCandidate& c, PrimeModulus p);

/// Square case only: true iff every n x n minor of (Id_n | T) is nonzero
/// mod l. Independent of is_pirutka; used to cross-check it.
bool square_minor_oracle(const PirutkaCandidate& c, PrimeModulus p);

/// d vertically stacked copies of Id_d (a d^2 x d matrix). Pirutka for
/// every prime.
PirutkaCandidate stacked_identity(std::size_t d);

/// The fixed example matrices, by name: "clever3x3" (Pirutka for l > 3),
/// "allprimes4x3" (Pirutka for all l) and "stacked:<d>".
PirutkaCandidate builtin_matrix(std::string_view name);

/// Bound handed to bad_primes that is too small to factor some minor gcd.
class BoundExceeded : public BudgetExceeded {
public:
  BoundExceeded(Int gcd, Int bound);
  Int gcd() const { return gcd_; }

private:
  Int gcd_;
};

struct BadPrimeSet {
  bool all_primes = false;
  std::vector<Int> primes; // sorted, meaningful only when !all_primes

  bool contains(Int l) const;
  friend bool operator==(const BadPrimeSet&, const BadPrimeSet&) = default;
};

/// The exact set of primes l for which c is not l-Pirutka. A prime is bad
/// iff it divides the gcd of the maximal minors of some required T[I,J];
/// a zero gcd makes every prime bad. search_bound limits the trial
/// division used to factor those gcds.
BadPrimeSet bad_primes(const PirutkaCandidate& c, Int search_bound);

struct SearchOptions {
  std::uint64_t budget = 100'000'000; // max size of the candidate space l^(nd)
  unsigned workers = 1;
};

struct SearchResult {
  std::optional<PirutkaCandidate> found;
  /// Candidates up to and including the answer in row-major lexicographic
  /// order, or l^(nd) when nothing qualifies. Pruning does not change it.
  std::uint64_t examined = 0;
  /// Row extensions actually evaluated by the pruned search.
  std::uint64_t visited = 0;
};

/// Least (row-major lexicographic) n x d matrix over {0..l-1} that is
/// l-Pirutka. Throws BudgetExceeded when l^(nd) > options.budget and
/// InputError when n < d or d == 0. The answer and both counters are
/// independent of options.workers.
SearchResult exhaustive_search(std::size_t n, std::size_t d, PrimeModulus p,
                               const SearchOptions& options = {});

/// Column-by-column construction of a square l-Pirutka matrix: column k+1
/// is the lexicographically least vector keeping every maximal minor of
/// (Id_n | t_1 .. t_{k+1}) through it nonzero mod l, with backtracking.
/// Always succeeds when l > C(2n-1, n).
std::optional<PirutkaCandidate> greedy_construct(std::size_t n, PrimeModulus p);

struct ExponentBound {
  Int exponent = 0;        // N + 1
  std::size_t rows = 0;    // N
  std::string matrix_name; // built-in that realises N
};

/// Exponent bookkeeping: the least row count N among built-in l-Pirutka
/// matrices with d+1 columns, plus one.
ExponentBound bound_exponent(PrimeModulus p, std::size_t d);

} // namespace ramsplit
