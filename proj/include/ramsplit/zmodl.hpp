#pragma once

// Exact linear algebra over Z and Z/l.
//
// Everything here works on residues held in int64_t; products of two
// residues stay below 2^62 because PrimeModulus caps l at 2^31.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "ramsplit/errors.hpp"

namespace ramsplit {

using Int = std::int64_t;

/// Dense row-major integer matrix.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, Int fill = 0);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

  /// Throws InputError when the rows are ragged or empty.
  static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Int> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const Int> data() const { return data_; }

  IntMatrix transpose() const;
  IntMatrix submatrix(std::span<const std::size_t> row_idx,
                      std::span<const std::size_t> col_idx) const;
  std::vector<std::vector<Int>> to_rows() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// A prime l, checked by trial division at construction.
class PrimeModulus {
public:
  /// Throws InputError unless value is a prime below 2^31.
  explicit PrimeModulus(Int value);

  Int value() const { return value_; }
  Int reduce(Int x) const {
    Int r = x % value_;
    return r < 0 ? r + value_ : r;
  }
  Int inverse(Int x) const;

  friend bool operator==(PrimeModulus, PrimeModulus) = default;

private:
  Int value_;
};

bool is_prime(Int n);

IntMatrix reduce_mod(const IntMatrix& m, PrimeModulus p);

/// Rank of m over F_l.
std::size_t rank_mod(const IntMatrix& m, PrimeModulus p);

/// Lexicographically least x in {0..l-1}^cols with A x = b (mod l), or
/// nullopt when the system is inconsistent. Throws InputError if b has the
/// wrong length.
std::optional<std::vector<Int>> solve_mod(const IntMatrix& a,
                                          std::span<const Int> b,
                                          PrimeModulus p);

/// Exact determinant over Z (fraction-free elimination). Throws InputError
/// for non-square input and std::overflow_error if an intermediate leaves
/// the 64-bit range.
Int determinant(const IntMatrix& m);

/// gcd of all cols x cols minors of m; 0 when every such minor vanishes.
/// Requires rows >= cols.
Int minor_gcd(const IntMatrix& m);

namespace detail {

// Rank over F_l of a row-major block already reduced mod l. Works in place
// on `scratch`; no allocation. Used by the hot loops of the Pirutka check.
std::size_t rank_in_place(std::span<Int> scratch, std::size_t rows,
                          std::size_t cols, Int l);

} // namespace detail

} // namespace ramsplit
