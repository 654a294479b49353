// Exhaustive search for the least l-Pirutka matrix.
//
// T is l-Pirutka iff for every nonzero v in F_l^d the number of rows i with
// <T_i, v> = 0 is at most n - d + wt(v) - 1. (If T[I,J] is rank deficient,
// a kernel vector of minimal support J' ⊆ J vanishes on the |I| rows of I,
// and |I| = n - d + |J| >= n - d + |J'|. The converse is the same argument
// read backwards.) Scaling v does not change the zero set, so projective
// representatives suffice. Zeros counted over a prefix of rows only grow as
// rows are appended, which makes the bound a sound prefix-pruning rule.

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "ramsplit/pirutka.hpp"

namespace ramsplit {

namespace {

struct Direction {
  std::vector<Int> v;
  std::size_t max_zeros; // n - d + wt(v) - 1
};

std::vector<Direction> projective_directions(std::size_t n, std::size_t d, Int l) {
  std::vector<Direction> out;
  std::vector<Int> v(d, 0);
  // representatives: first nonzero coordinate equal to 1
  for (std::size_t lead = 0; lead < d; ++lead) {
    std::fill(v.begin(), v.end(), 0);
    v[lead] = 1;
    while (true) {
      const auto wt = static_cast<std::size_t>(
          std::count_if(v.begin(), v.end(), [](Int x) { return x != 0; }));
      out.push_back({v, n - d + wt - 1});
      std::size_t i = d;
      bool carried = true;
      while (carried && i-- > lead + 1) {
        if (++v[i] < l) carried = false;
        else v[i] = 0;
      }
      if (carried) break;
    }
  }
  return out;
}

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  unsigned __int128 r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

class RowSearch {
public:
  RowSearch(std::size_t n, std::size_t d, Int l)
      : n_(n), d_(d), l_(l), dirs_(projective_directions(n, d, l)),
        row_count_(static_cast<Int>(saturating_pow(static_cast<std::uint64_t>(l), d))) {
    // zero_[r * dirs + k]: row value r is orthogonal to direction k
    zero_.resize(static_cast<std::size_t>(row_count_) * dirs_.size());
    std::vector<Int> digits(d_);
    for (Int r = 0; r < row_count_; ++r) {
      decode(r, digits);
      for (std::size_t k = 0; k < dirs_.size(); ++k) {
        Int dot = 0;
        for (std::size_t j = 0; j < d_; ++j) dot += digits[j] * dirs_[k].v[j];
        zero_[static_cast<std::size_t>(r) * dirs_.size() + k] = (dot % l_) == 0 ? 1 : 0;
      }
    }
  }

  Int row_count() const { return row_count_; }

  void decode(Int r, std::vector<Int>& digits) const {
    for (std::size_t j = d_; j-- > 0;) {
      digits[j] = r % l_;
      r /= l_;
    }
  }

  struct BranchResult {
    bool found = false;
    std::vector<Int> rows; // row values of the answer
    std::uint64_t visited = 0;
  };

  // Depth-first search with the first row fixed to `first`.
  BranchResult run_branch(Int first) const {
    BranchResult res;
    std::vector<std::size_t> zeros(dirs_.size(), 0);
    std::vector<Int> rows;
    rows.reserve(n_);
    res.found = extend(first, zeros, rows, res.visited);
    if (res.found) res.rows = rows;
    return res;
  }

private:
  bool try_row(Int r, std::vector<std::size_t>& zeros) const {
    const char* z = &zero_[static_cast<std::size_t>(r) * dirs_.size()];
    bool ok = true;
    for (std::size_t k = 0; k < dirs_.size(); ++k) {
      zeros[k] += z[k];
      if (zeros[k] > dirs_[k].max_zeros) ok = false;
    }
    return ok;
  }

  void undo_row(Int r, std::vector<std::size_t>& zeros) const {
    const char* z = &zero_[static_cast<std::size_t>(r) * dirs_.size()];
    for (std::size_t k = 0; k < dirs_.size(); ++k) zeros[k] -= z[k];
  }

  bool extend(Int r, std::vector<std::size_t>& zeros, std::vector<Int>& rows,
              std::uint64_t& visited) const {
    ++visited;
    if (!try_row(r, zeros)) {
      undo_row(r, zeros);
      return false;
    }
    rows.push_back(r);
    if (rows.size() == n_) return true;
    for (Int next = 0; next < row_count_; ++next)
      if (extend(next, zeros, rows, visited)) return true;
    rows.pop_back();
    undo_row(r, zeros);
    return false;
  }

  std::size_t n_, d_;
  Int l_;
  std::vector<Direction> dirs_;
  Int row_count_;
  std::vector<char> zero_;
};

} // namespace

SearchResult exhaustive_search(std::size_t n, std::size_t d, PrimeModulus p,
                               const SearchOptions& options) {
  if (d == 0 || n < d) throw InputError("exhaustive_search needs n >= d >= 1");
  const auto l = static_cast<std::uint64_t>(p.value());
  const std::uint64_t space = saturating_pow(l, n * d);
  if (space > options.budget)
    throw BudgetExceeded("budget exceeded: candidate space " + std::to_string(l) + "^" +
                         std::to_string(n * d) + " exceeds budget " +
                         std::to_string(options.budget));

  const RowSearch search(n, d, p.value());
  const Int branches = search.row_count();
  std::vector<RowSearch::BranchResult> results(static_cast<std::size_t>(branches));
  std::atomic<Int> next{0};
  std::atomic<Int> best{branches}; // least branch with an answer so far

  auto worker = [&] {
    for (Int b = next++; b < branches; b = next++) {
      if (b > best.load()) continue; // cannot beat a known answer
      results[static_cast<std::size_t>(b)] = search.run_branch(b);
      if (results[static_cast<std::size_t>(b)].found) {
        Int cur = best.load();
        while (b < cur && !best.compare_exchange_weak(cur, b)) {
        }
      }
    }
  };
  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  // Merge exactly as a sequential scan would have seen it.
  SearchResult out;
  const Int winner = best.load();
  for (Int b = 0; b < branches && b <= winner; ++b) out.visited += results[static_cast<std::size_t>(b)].visited;
  if (winner == branches) {
    out.examined = space;
    return out;
  }
  const auto& rows = results[static_cast<std::size_t>(winner)].rows;
  IntMatrix t(n, d);
  std::vector<Int> digits(d);
  unsigned __int128 index = 0;
  for (std::size_t i = 0; i < n; ++i) {
    search.decode(rows[i], digits);
    for (std::size_t j = 0; j < d; ++j) {
      t(i, j) = digits[j];
      index = index * l + static_cast<std::uint64_t>(digits[j]);
    }
  }
  out.examined = static_cast<std::uint64_t>(index) + 1;
  out.found = PirutkaCandidate(std::move(t));
  return out;
}

} // namespace ramsplit
