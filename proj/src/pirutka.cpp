#include "ramsplit/pirutka.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>

#include "ramsplit/subsets.hpp"

namespace ramsplit {

PirutkaCandidate::PirutkaCandidate(IntMatrix t) : t_(std::move(t)) {
  if (t_.cols() == 0) throw InputError("candidate needs at least one column");
  if (t_.rows() < t_.cols())
    throw InputError("candidate needs n >= d, got " + std::to_string(t_.rows()) + "x" +
                     std::to_string(t_.cols()));
}

namespace {

// Calls f(I, J) for every required pair in (|J|, J, I) order; stops when f
// returns false.
template <class F>
bool for_each_required_pair(std::size_t n, std::size_t d, F&& f) {
  for (std::size_t k = 1; k <= d; ++k) {
    const bool go_on = for_each_combination(d, k, [&](const std::vector<std::size_t>& cols) {
      return for_each_combination(n, n - d + k, [&](const std::vector<std::size_t>& rows) {
        return f(rows, cols);
      });
    });
    if (!go_on) return false;
  }
  return true;
}

} // namespace

CheckReport is_pirutka(const PirutkaCandidate& c, PrimeModulus p) {
  const IntMatrix t = reduce_mod(c.matrix(), p);
  const std::size_t n = c.n(), d = c.d();
  std::vector<Int> scratch(n * d);
  CheckReport report;
  for_each_required_pair(n, d, [&](const auto& rows, const auto& cols) {
    std::size_t pos = 0;
    for (auto i : rows)
      for (auto j : cols) scratch[pos++] = t(i, j);
    const std::size_t rank =
        detail::rank_in_place(std::span(scratch).first(pos), rows.size(), cols.size(), p.value());
    if (rank == cols.size()) return true;
    report.verdict = false;
    report.witness = PirutkaWitness{rows, cols, c.matrix().submatrix(rows, cols), rank};
    return false;
  });
  return report;
}

bool square_minor_oracle(const PirutkaCandidate& c, PrimeModulus p) {
  if (c.n() != c.d()) throw InputError("square_minor_oracle needs a square matrix");
  const std::size_t n = c.n();
  IntMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    aug(i, i) = 1;
    for (std::size_t j = 0; j < n; ++j) aug(i, n + j) = c.matrix()(i, j);
  }
  const auto all_rows = first_combination(n);
  return for_each_combination(2 * n, n, [&](const std::vector<std::size_t>& cols) {
    return p.reduce(determinant(aug.submatrix(all_rows, cols))) != 0;
  });
}

PirutkaCandidate stacked_identity(std::size_t d) {
  if (d == 0) throw InputError("stacked_identity needs d >= 1");
  IntMatrix t(d * d, d);
  for (std::size_t copy = 0; copy < d; ++copy)
    for (std::size_t j = 0; j < d; ++j) t(copy * d + j, j) = 1;
  return PirutkaCandidate(std::move(t));
}

PirutkaCandidate builtin_matrix(std::string_view name) {
  if (name == "clever3x3") return PirutkaCandidate(IntMatrix{{1, 3, 3}, {1, 2, 1}, {1, 1, 2}});
  if (name == "allprimes4x3")
    return PirutkaCandidate(IntMatrix{{1, 1, 1}, {1, 1, 0}, {0, 1, 1}, {1, 2, 1}});
  constexpr std::string_view prefix = "stacked:";
  if (name.starts_with(prefix)) {
    const auto digits = name.substr(prefix.size());
    std::size_t d = 0;
    const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
    if (ec == std::errc() && end == digits.data() + digits.size() && d >= 1 && d <= 64)
      return stacked_identity(d);
  }
  throw InputError("unknown built-in matrix: " + std::string(name));
}

BoundExceeded::BoundExceeded(Int gcd, Int bound)
    : BudgetExceeded("bound exceeded: minor gcd " + std::to_string(gcd) +
                     " has a prime factor above " + std::to_string(bound)),
      gcd_(gcd) {}

bool BadPrimeSet::contains(Int l) const {
  return all_primes || std::binary_search(primes.begin(), primes.end(), l);
}

BadPrimeSet bad_primes(const PirutkaCandidate& c, Int search_bound) {
  if (search_bound < 2) throw InputError("search bound must be at least 2");
  std::set<Int> bad;
  bool all = false;
  for_each_required_pair(c.n(), c.d(), [&](const auto& rows, const auto& cols) {
    const Int g = minor_gcd(c.matrix().submatrix(rows, cols));
    if (g == 0) {
      all = true;
      return false;
    }
    Int rest = g < 0 ? -g : g;
    for (Int q = 2; q <= search_bound && q * q <= rest; ++q) {
      if (rest % q != 0) continue;
      bad.insert(q);
      while (rest % q == 0) rest /= q;
    }
    if (rest > 1) {
      // rest is 1, or a prime when the loop ran to sqrt(rest)
      if (rest > search_bound) throw BoundExceeded(g, search_bound);
      bad.insert(rest);
    }
    return true;
  });
  if (all) return BadPrimeSet{true, {}};
  return BadPrimeSet{false, {bad.begin(), bad.end()}};
}

std::optional<PirutkaCandidate> greedy_construct(std::size_t n, PrimeModulus p) {
  if (n == 0) throw InputError("greedy_construct needs n >= 1");
  const Int l = p.value();
  // columns of A = (Id_n | t_1 .. t_k), each a length-n vector
  std::vector<std::vector<Int>> columns;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Int> e(n, 0);
    e[j] = 1;
    columns.push_back(std::move(e));
  }
  std::vector<Int> scratch(n * n);

  auto admissible = [&](const std::vector<Int>& t) {
    const std::size_t existing = columns.size();
    return for_each_combination(existing, n - 1, [&](const std::vector<std::size_t>& others) {
      // row-major n x n block with columns [others..., t]
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t s = 0; s < n - 1; ++s) scratch[i * n + s] = columns[others[s]][i];
        scratch[i * n + n - 1] = t[i];
      }
      return detail::rank_in_place(scratch, n, n, l) == n;
    });
  };

  // advance v to its lexicographic successor in {0..l-1}^n
  auto next_vector = [&](std::vector<Int>& v) {
    for (std::size_t i = n; i-- > 0;) {
      if (++v[i] < l) return true;
      v[i] = 0;
    }
    return false;
  };

  std::function<bool(std::size_t)> place = [&](std::size_t k) {
    if (k == n) return true;
    std::vector<Int> v(n, 0);
    do {
      if (admissible(v)) {
        columns.push_back(v);
        if (place(k + 1)) return true;
        columns.pop_back();
      }
    } while (next_vector(v));
    return false;
  };
  if (!place(0)) return std::nullopt;

  IntMatrix t(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) t(i, j) = columns[n + j][i];
  return PirutkaCandidate(std::move(t));
}

ExponentBound bound_exponent(PrimeModulus p, std::size_t d) {
  if (d == 0) throw InputError("bound_exponent needs d >= 1");
  const std::size_t cols = d + 1;
  ExponentBound best{static_cast<Int>(cols * cols) + 1, cols * cols,
                     "stacked:" + std::to_string(cols)};
  if (cols == 3) {
    for (const char* name : {"clever3x3", "allprimes4x3"}) {
      const auto m = builtin_matrix(name);
      if (m.n() < best.rows && is_pirutka(m, p).verdict)
        best = ExponentBound{static_cast<Int>(m.n()) + 1, m.n(), name};
    }
  }
  return best;
}

} // namespace ramsplit
