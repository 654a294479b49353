#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ramsplit {

/// Advances `idx` (a strictly increasing k-subset of {0..n-1}) to its
/// lexicographic successor. Returns false after the last subset.
inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  return idx;
}

/// Calls f(subset) for every k-subset of {0..n-1} in lexicographic order,
/// stopping early when f returns false. Returns false if stopped early.
template <class F>
bool for_each_combination(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return true;
  auto idx = first_combination(k);
  do {
    if (!f(static_cast<const std::vector<std::size_t>&>(idx))) return false;
  } while (k > 0 && next_combination(idx, n));
  return true;
}

/// Binomial coefficient, saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

} // namespace ramsplit
