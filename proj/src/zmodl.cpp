#include "ramsplit/zmodl.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace ramsplit {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, Int fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_)
    throw InputError("matrix entry count " + std::to_string(data_.size()) +
                     " does not match shape " + std::to_string(rows_) + "x" +
                     std::to_string(cols_));
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
  std::vector<std::vector<Int>> r;
  for (const auto& row : rows) r.emplace_back(row);
  *this = from_rows(r);
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
  if (rows.empty() || rows.front().empty())
    throw InputError("matrix must have at least one row and one column");
  const std::size_t cols = rows.front().size();
  std::vector<Int> data;
  data.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) throw InputError("matrix rows have unequal lengths");
    data.insert(data.end(), row.begin(), row.end());
  }
  return IntMatrix(rows.size(), cols, std::move(data));
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::submatrix(std::span<const std::size_t> row_idx,
                               std::span<const std::size_t> col_idx) const {
  IntMatrix s(row_idx.size(), col_idx.size());
  for (std::size_t a = 0; a < row_idx.size(); ++a)
    for (std::size_t b = 0; b < col_idx.size(); ++b)
      s(a, b) = (*this)(row_idx[a], col_idx[b]);
  return s;
}

std::vector<std::vector<Int>> IntMatrix::to_rows() const {
  std::vector<std::vector<Int>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

bool is_prime(Int n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (Int q = 3; q * q <= n; q += 2)
    if (n % q == 0) return false;
  return true;
}

PrimeModulus::PrimeModulus(Int value) : value_(value) {
  if (value >= (Int{1} << 31)) throw InputError("modulus too large: " + std::to_string(value));
  if (!is_prime(value)) throw InputError("modulus is not prime: " + std::to_string(value));
}

Int PrimeModulus::inverse(Int x) const {
  Int a = reduce(x);
  if (a == 0) throw std::domain_error("zero has no inverse mod l");
  // extended Euclid on (a, l)
  Int old_r = a, r = value_, old_s = 1, s = 0;
  while (r != 0) {
    const Int q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  return reduce(old_s);
}

IntMatrix reduce_mod(const IntMatrix& m, PrimeModulus p) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = p.reduce(m(i, j));
  return out;
}

namespace detail {

namespace {

Int inv_mod(Int a, Int l) {
  Int old_r = a, r = l, old_s = 1, s = 0;
  while (r != 0) {
    const Int q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  old_s %= l;
  return old_s < 0 ? old_s + l : old_s;
}

} // namespace

std::size_t rank_in_place(std::span<Int> a, std::size_t rows, std::size_t cols, Int l) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t k = c; k < cols; ++k) std::swap(a[piv * cols + k], a[rank * cols + k]);
    const Int inv = inv_mod(a[rank * cols + c], l);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const Int f = a[r * cols + c] * inv % l;
      if (f == 0) continue;
      for (std::size_t k = c; k < cols; ++k) {
        Int v = (a[r * cols + k] - f * a[rank * cols + k]) % l;
        a[r * cols + k] = v < 0 ? v + l : v;
      }
    }
    ++rank;
  }
  return rank;
}

} // namespace detail

std::size_t rank_mod(const IntMatrix& m, PrimeModulus p) {
  IntMatrix r = reduce_mod(m, p);
  std::vector<Int> scratch(r.data().begin(), r.data().end());
  return detail::rank_in_place(scratch, m.rows(), m.cols(), p.value());
}

namespace {

// Some solution of A x = b over F_l (free variables set to 0), via reduced
// row echelon form of the augmented matrix. `a` is rows x cols, residues.
std::optional<std::vector<Int>> particular_solution(const std::vector<Int>& a,
                                                    const std::vector<Int>& b,
                                                    std::size_t rows, std::size_t cols,
                                                    PrimeModulus p) {
  const Int l = p.value();
  const std::size_t w = cols + 1;
  std::vector<Int> aug(rows * w);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug[i * w + j] = a[i * cols + j];
    aug[i * w + cols] = b[i];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && aug[piv * w + c] == 0) ++piv;
    if (piv == rows) continue;
    for (std::size_t k = 0; k < w; ++k) std::swap(aug[piv * w + k], aug[rank * w + k]);
    const Int inv = p.inverse(aug[rank * w + c]);
    for (std::size_t k = 0; k < w; ++k) aug[rank * w + k] = aug[rank * w + k] * inv % l;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || aug[r * w + c] == 0) continue;
      const Int f = aug[r * w + c];
      for (std::size_t k = 0; k < w; ++k) aug[r * w + k] = p.reduce(aug[r * w + k] - f * aug[rank * w + k]);
    }
    pivot_cols.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (aug[r * w + cols] != 0) return std::nullopt;
  std::vector<Int> x(cols, 0);
  for (std::size_t r = 0; r < rank; ++r) x[pivot_cols[r]] = aug[r * w + cols];
  return x;
}

} // namespace

std::optional<std::vector<Int>> solve_mod(const IntMatrix& a, std::span<const Int> b,
                                          PrimeModulus p) {
  if (b.size() != a.rows())
    throw InputError("right-hand side has length " + std::to_string(b.size()) +
                     ", expected " + std::to_string(a.rows()));
  const std::size_t rows = a.rows(), cols = a.cols();
  const IntMatrix ar = reduce_mod(a, p);
  std::vector<Int> rhs(rows);
  for (std::size_t i = 0; i < rows; ++i) rhs[i] = p.reduce(b[i]);

  auto columns_from = [&](std::size_t first) {
    std::vector<Int> sub(rows * (cols - first));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = first; j < cols; ++j) sub[i * (cols - first) + (j - first)] = ar(i, j);
    return sub;
  };

  if (!particular_solution(columns_from(0), rhs, rows, cols, p)) return std::nullopt;

  // Fix coordinates left to right. The feasible values of x_k (given the
  // earlier ones) form an affine subspace of F_l: everything, or one point.
  std::vector<Int> x(cols, 0);
  for (std::size_t k = 0; k < cols; ++k) {
    if (!particular_solution(columns_from(k + 1), rhs, rows, cols - k - 1, p)) {
      auto forced = particular_solution(columns_from(k), rhs, rows, cols - k, p);
      x[k] = (*forced)[0];
      for (std::size_t i = 0; i < rows; ++i) rhs[i] = p.reduce(rhs[i] - ar(i, k) * x[k]);
    }
  }
  return x;
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<__int128> a(m.data().begin(), m.data().end());
  __int128 prev = 1;
  int sign = 1;
  constexpr __int128 kLimit = static_cast<__int128>(std::numeric_limits<Int>::max());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a[piv * n + k] == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a[k * n + c], a[piv * n + c]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const __int128 v = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
        if (v > kLimit || v < -kLimit) throw std::overflow_error("determinant overflow");
        a[i * n + j] = v;
      }
    }
    prev = a[k * n + k];
  }
  return sign * static_cast<Int>(a[n * n - 1]);
}

Int minor_gcd(const IntMatrix& m) {
  if (m.rows() < m.cols())
    throw InputError("minor_gcd needs rows >= cols, got " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()));
  const std::size_t r = m.rows(), k = m.cols();
  std::vector<std::size_t> cols(k);
  std::iota(cols.begin(), cols.end(), 0);
  // iterate k-subsets of rows through a selection mask
  std::vector<bool> pick(r, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  Int g = 0;
  std::vector<std::size_t> rows;
  do {
    rows.clear();
    for (std::size_t i = 0; i < r; ++i)
      if (pick[i]) rows.push_back(i);
    g = std::gcd(g, determinant(m.submatrix(rows, cols)));
    if (g == 1) return 1;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return g;
}

} // namespace ramsplit
