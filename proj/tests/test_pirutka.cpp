#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ramsplit/pirutka.hpp"
#include "ramsplit/subsets.hpp"

using namespace ramsplit;

namespace {

// Rank over F_l as the size of the largest nonvanishing minor, with minors
// evaluated by cofactor expansion. Slow but independent of the library.
Int cofactor_det(const std::vector<std::vector<Int>>& m) {
  if (m.size() == 1) return m[0][0];
  Int total = 0;
  for (std::size_t c = 0; c < m.size(); ++c) {
    std::vector<std::vector<Int>> minor;
    for (std::size_t r = 1; r < m.size(); ++r) {
      std::vector<Int> row;
      for (std::size_t k = 0; k < m.size(); ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    total += (c % 2 ? -1 : 1) * m[0][c] * cofactor_det(minor);
  }
  return total;
}

bool full_column_rank(const IntMatrix& t, const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols, Int l) {
  bool found = false;
  for_each_combination(rows.size(), cols.size(), [&](const std::vector<std::size_t>& pick) {
    std::vector<std::vector<Int>> m;
    for (auto r : pick) {
      std::vector<Int> row;
      for (auto c : cols) row.push_back(t(rows[r], c));
      m.push_back(row);
    }
    found = cofactor_det(m) % l != 0;
    return !found;
  });
  return found;
}

struct OracleVerdict {
  bool verdict = true;
  std::vector<std::size_t> rows, cols;
};

// The definition, enumerated in (|J|, J, I) order.
OracleVerdict definition_oracle(const IntMatrix& t, Int l) {
  const std::size_t n = t.rows(), d = t.cols();
  OracleVerdict out;
  for (std::size_t k = 1; k <= d && out.verdict; ++k) {
    for_each_combination(d, k, [&](const std::vector<std::size_t>& cols) {
      for_each_combination(n, n - d + k, [&](const std::vector<std::size_t>& rows) {
        if (full_column_rank(t, rows, cols, l)) return true;
        out = {false, rows, cols};
        return false;
      });
      return out.verdict;
    });
  }
  return out;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, Int lo, Int hi) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = lo + static_cast<Int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  return m;
}

IntMatrix from_index(std::uint64_t index, std::size_t n, std::size_t d, Int l) {
  IntMatrix m(n, d);
  for (std::size_t k = n * d; k-- > 0;) {
    m(k / d, k % d) = static_cast<Int>(index % static_cast<std::uint64_t>(l));
    index /= static_cast<std::uint64_t>(l);
  }
  return m;
}

std::vector<Int> primes_up_to(Int bound) {
  std::vector<Int> out;
  for (Int p = 2; p <= bound; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

} // namespace

TEST_CASE("candidate shape") {
  CHECK_THROWS_AS(PirutkaCandidate(IntMatrix{{1, 2}}), InputError);
  CHECK_NOTHROW(PirutkaCandidate(IntMatrix{{1, 2}, {3, 4}, {5, 6}}));
  CHECK_THROWS_AS(builtin_matrix("nope"), InputError);
  CHECK_THROWS_AS(builtin_matrix("stacked:0"), InputError);
  CHECK_THROWS_AS(builtin_matrix("stacked:x"), InputError);
  CHECK(builtin_matrix("stacked:3") == stacked_identity(3));
  CHECK(stacked_identity(2).matrix() == IntMatrix{{1, 0}, {0, 1}, {1, 0}, {0, 1}});
}

TEST_CASE("built-in examples") {
  const auto clever = builtin_matrix("clever3x3");
  const auto all = builtin_matrix("allprimes4x3");
  for (Int p : primes_up_to(100)) {
    CAPTURE(p);
    CHECK(is_pirutka(all, PrimeModulus(p)).verdict);
    CHECK(is_pirutka(clever, PrimeModulus(p)).verdict == (p > 3));
  }
  for (std::size_t d : {2, 3})
    for (Int p : {2, 3, 5}) CHECK(is_pirutka(stacked_identity(d), PrimeModulus(p)).verdict);
}

TEST_CASE("least failing pair of the 3x3 example") {
  const auto clever = builtin_matrix("clever3x3");
  const auto r3 = is_pirutka(clever, PrimeModulus(3));
  REQUIRE_FALSE(r3.verdict);
  REQUIRE(r3.witness);
  CHECK(r3.witness->rows == std::vector<std::size_t>{0});
  CHECK(r3.witness->cols == std::vector<std::size_t>{1});
  CHECK(r3.witness->submatrix == IntMatrix{{3}});
  CHECK(r3.witness->rank == 0);

  const auto r2 = is_pirutka(clever, PrimeModulus(2));
  REQUIRE(r2.witness);
  CHECK(r2.witness->rows == std::vector<std::size_t>{1});
  CHECK(r2.witness->cols == std::vector<std::size_t>{1});
  CHECK(is_pirutka(clever, PrimeModulus(5)).witness == std::nullopt);
}

TEST_CASE("is_pirutka agrees with the definition, witness included") {
  std::mt19937_64 rng(1);
  for (Int p : {2, 3, 5}) {
    const PrimeModulus l(p);
    for (int trial = 0; trial < 120; ++trial) {
      const auto d = 1 + rng() % 3;
      const auto n = d + rng() % 3;
      const IntMatrix t = random_matrix(rng, n, d, 0, 4);
      const auto got = is_pirutka(PirutkaCandidate(t), l);
      const auto want = definition_oracle(t, p);
      CAPTURE(t.to_rows());
      REQUIRE(got.verdict == want.verdict);
      if (!want.verdict) {
        REQUIRE(got.witness);
        CHECK(got.witness->rows == want.rows);
        CHECK(got.witness->cols == want.cols);
        CHECK(got.witness->rank < want.cols.size());
        CHECK(got.witness->submatrix == t.submatrix(want.rows, want.cols));
      }
    }
  }
}

TEST_CASE("square oracle: fixed values and exhaustive agreement for n <= 2") {
  CHECK(square_minor_oracle(PirutkaCandidate(IntMatrix{{1, 1}, {1, 2}}), PrimeModulus(3)));
  CHECK_FALSE(square_minor_oracle(PirutkaCandidate(IntMatrix{{1, 1}, {1, 2}}), PrimeModulus(2)));
  CHECK_THROWS_AS(square_minor_oracle(builtin_matrix("allprimes4x3"), PrimeModulus(5)), InputError);
  for (Int p : {2, 3, 5}) {
    const PrimeModulus l(p);
    for (std::size_t n = 1; n <= 2; ++n) {
      std::uint64_t total = 1;
      for (std::size_t k = 0; k < n * n; ++k) total *= static_cast<std::uint64_t>(p);
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        const PirutkaCandidate c(from_index(idx, n, n, p));
        CHECK(is_pirutka(c, l).verdict == square_minor_oracle(c, l));
      }
    }
  }
}

TEST_CASE("verdict is invariant under reduction mod l and permutations") {
  std::mt19937_64 rng(17);
  for (Int p : {2, 3, 5, 7}) {
    const PrimeModulus l(p);
    for (int trial = 0; trial < 80; ++trial) {
      const IntMatrix t = random_matrix(rng, 4, 3, -20, 20);
      const bool verdict = is_pirutka(PirutkaCandidate(t), l).verdict;
      CHECK(is_pirutka(PirutkaCandidate(reduce_mod(t, l)), l).verdict == verdict);

      std::vector<std::size_t> rows(4), cols(3);
      std::iota(rows.begin(), rows.end(), 0);
      std::iota(cols.begin(), cols.end(), 0);
      std::shuffle(rows.begin(), rows.end(), rng);
      std::shuffle(cols.begin(), cols.end(), rng);
      CHECK(is_pirutka(PirutkaCandidate(t.submatrix(rows, cols)), l).verdict == verdict);
    }
  }
}

TEST_CASE("bad primes: fixed values") {
  CHECK(bad_primes(builtin_matrix("clever3x3"), 1000) == BadPrimeSet{false, {2, 3}});
  CHECK(bad_primes(builtin_matrix("allprimes4x3"), 1000) == BadPrimeSet{false, {}});
  CHECK(bad_primes(stacked_identity(3), 1000) == BadPrimeSet{false, {}});
  const auto zero_col = bad_primes(PirutkaCandidate(IntMatrix{{1, 0}, {1, 0}, {2, 0}}), 1000);
  CHECK(zero_col.all_primes);
  CHECK(zero_col.contains(101));
  // a single entry 1009 * 1013 needs trial division past 1009
  CHECK_THROWS_AS(bad_primes(PirutkaCandidate(IntMatrix{{1009 * 1013}}), 1000), BoundExceeded);
  CHECK(bad_primes(PirutkaCandidate(IntMatrix{{1009 * 1013}}), 2000) == BadPrimeSet{false, {1009, 1013}});
  CHECK_THROWS_AS(bad_primes(stacked_identity(2), 1), InputError);
}

TEST_CASE("bad primes are exactly the primes where the check fails") {
  std::mt19937_64 rng(23);
  std::vector<PirutkaCandidate> corpus{builtin_matrix("clever3x3"), builtin_matrix("allprimes4x3"),
                                       stacked_identity(2), stacked_identity(3)};
  for (int trial = 0; trial < 60; ++trial) corpus.emplace_back(random_matrix(rng, 4, 3, -6, 6));
  for (const auto& c : corpus) {
    const auto bad = bad_primes(c, 1'000'000);
    for (Int p : primes_up_to(50)) {
      CAPTURE(p);
      CHECK(bad.contains(p) == !is_pirutka(c, PrimeModulus(p)).verdict);
    }
  }
}

TEST_CASE("exhaustive search: fixed values") {
  const auto r = exhaustive_search(2, 2, PrimeModulus(3));
  REQUIRE(r.found);
  CHECK(r.found->matrix() == IntMatrix{{1, 1}, {1, 2}});
  CHECK(r.examined == 42);

  const auto none = exhaustive_search(2, 2, PrimeModulus(2));
  CHECK_FALSE(none.found);
  CHECK(none.examined == 16);

  CHECK_THROWS_AS(exhaustive_search(4, 4, PrimeModulus(5)), BudgetExceeded);
  CHECK_THROWS_AS(exhaustive_search(2, 3, PrimeModulus(5)), InputError);
  SearchOptions tight;
  tight.budget = 80;
  CHECK_THROWS_AS(exhaustive_search(2, 2, PrimeModulus(3), tight), BudgetExceeded);
  tight.budget = 81;
  CHECK(exhaustive_search(2, 2, PrimeModulus(3), tight).found);
}

TEST_CASE("exhaustive search matches plain enumeration") {
  struct Tier {
    std::size_t n, d;
    Int l;
  };
  for (const Tier tier : {Tier{1, 1, 2}, Tier{2, 1, 3}, Tier{2, 2, 2}, Tier{2, 2, 3}, Tier{3, 2, 2},
                          Tier{3, 2, 3}, Tier{3, 3, 2}, Tier{2, 2, 5}, Tier{4, 2, 2}}) {
    CAPTURE(tier.n);
    CAPTURE(tier.d);
    CAPTURE(tier.l);
    const PrimeModulus l(tier.l);
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < tier.n * tier.d; ++k) total *= static_cast<std::uint64_t>(tier.l);
    std::optional<IntMatrix> want;
    std::uint64_t examined = total;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      const IntMatrix m = from_index(idx, tier.n, tier.d, tier.l);
      if (is_pirutka(PirutkaCandidate(m), l).verdict) {
        want = m;
        examined = idx + 1;
        break;
      }
    }
    const auto got = exhaustive_search(tier.n, tier.d, l);
    CHECK(got.found.has_value() == want.has_value());
    if (got.found && want) CHECK(got.found->matrix() == *want);
    CHECK(got.examined == examined);
    CHECK(got.visited <= total);
  }
}

TEST_CASE("exhaustive search does not depend on the number of workers") {
  for (auto [n, d, p] : {std::tuple{3, 3, 3}, std::tuple{3, 2, 5}, std::tuple{2, 2, 3}, std::tuple{3, 3, 5}}) {
    const PrimeModulus l(p);
    SearchOptions one;
    const auto base = exhaustive_search(n, d, l, one);
    for (unsigned w : {2u, 3u, 8u}) {
      SearchOptions many;
      many.workers = w;
      const auto r = exhaustive_search(n, d, l, many);
      CHECK(r.found == base.found);
      CHECK(r.examined == base.examined);
      CHECK(r.visited == base.visited);
    }
  }
}

TEST_CASE("greedy construction") {
  CHECK(greedy_construct(1, PrimeModulus(2))->matrix() == IntMatrix{{1}});
  CHECK(greedy_construct(2, PrimeModulus(5))->matrix() == IntMatrix{{1, 1}, {1, 2}});
  CHECK(greedy_construct(3, PrimeModulus(11))->matrix() == IntMatrix{{1, 1, 1}, {1, 2, 3}, {1, 3, 2}});
  for (auto [n, p] : {std::pair{2, 5}, std::pair{3, 11}, std::pair{4, 41}, std::pair{2, 3}, std::pair{3, 7}}) {
    const PrimeModulus l(p);
    const auto t = greedy_construct(n, l);
    REQUIRE(t);
    CHECK(t->n() == static_cast<std::size_t>(n));
    CHECK(is_pirutka(*t, l).verdict);
    CHECK(square_minor_oracle(*t, l));
  }
  // no square 2-Pirutka matrix of size 2 exists, so backtracking must give up
  CHECK_FALSE(greedy_construct(2, PrimeModulus(2)));
}

TEST_CASE("exponent bookkeeping") {
  CHECK(bound_exponent(PrimeModulus(5), 2).exponent == 4);
  CHECK(bound_exponent(PrimeModulus(5), 2).matrix_name == "clever3x3");
  CHECK(bound_exponent(PrimeModulus(2), 2).exponent == 5);
  CHECK(bound_exponent(PrimeModulus(2), 2).matrix_name == "allprimes4x3");
  CHECK(bound_exponent(PrimeModulus(3), 2).exponent == 5);
  const auto b = bound_exponent(PrimeModulus(7), 3);
  CHECK(b.exponent == 17);
  CHECK(b.rows == 16);
  CHECK(b.matrix_name == "stacked:4");
  CHECK(is_pirutka(builtin_matrix(b.matrix_name), PrimeModulus(7)).verdict);
  CHECK(bound_exponent(PrimeModulus(2), 1).exponent == 5);
  CHECK_THROWS_AS(bound_exponent(PrimeModulus(2), 0), InputError);
}
