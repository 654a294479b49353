#pragma once

// Symbolic nicely-ramified classes over Z/l and splitting certificates.
//
// A class is alpha0 + sum c_{u,i} (u, x_i) + sum_{i<j} m_{i,j} (x_i, x_j)
// with opaque unit tokens u and coordinates x_1..x_d (0-based here). Units
// carry no arithmetic; "-1" is the distinguished token produced by diagonal
// symbols and residue signs.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramsplit/pirutka.hpp"

namespace ramsplit {

inline const std::string kMinusOne = "-1";

/// u * x^e. An empty unit token stands for the unit 1.
struct Monomial {
  std::string unit;
  std::vector<Int> exponents;
};

/// coefficient * (f, g)
struct RawSymbol {
  Monomial f;
  Monomial g;
  Int coefficient = 1;
};

class SymbolClass {
public:
  using UnitKey = std::pair<std::string, std::size_t>; // (u, i) for (u, x_i)
  using PairKey = std::pair<std::size_t, std::size_t>; // (i, j), i < j

  SymbolClass(PrimeModulus l, std::size_t d, std::string unramified = "alpha0");

  PrimeModulus modulus() const { return l_; }
  std::size_t d() const { return d_; }
  const std::string& unramified_part() const { return unramified_; }
  const std::map<UnitKey, Int>& unit_terms() const { return units_; }
  const std::map<PairKey, Int>& pair_terms() const { return pairs_; }

  /// Adds c * (u, x_i). The unit 1 (empty token) contributes nothing.
  void add_unit_term(const std::string& u, std::size_t i, Int c);
  /// Adds c * (x_i, x_j); stored as -c * (x_j, x_i) when i > j and as
  /// c * (-1, x_i) when i == j.
  void add_pair_term(std::size_t i, std::size_t j, Int c);

  bool is_zero() const { return units_.empty() && pairs_.empty(); }

  /// Term-wise sum; throws InputError when l or d differ.
  SymbolClass operator+(const SymbolClass& other) const;

  friend bool operator==(const SymbolClass&, const SymbolClass&) = default;

private:
  void check_index(std::size_t i) const;

  PrimeModulus l_;
  std::size_t d_;
  std::string unramified_;
  std::map<UnitKey, Int> units_;
  std::map<PairKey, Int> pairs_;
};

/// Bimultiplicative expansion into normal form. Unit-unit symbols are
/// unramified and absorbed into alpha0. Throws InputError when an exponent
/// vector does not have length d.
SymbolClass normal_form(const std::vector<RawSymbol>& raw, std::size_t d, PrimeModulus l,
                        std::string unramified = "alpha0");

/// The class written back as raw symbols (one per term).
std::vector<RawSymbol> to_symbols(const SymbolClass& alpha);

/// A class in the mod-l quotient of the multiplicative group of the residue
/// field of x_k: unit tokens with exponents and exponents on the remaining
/// coordinates (entry k is always 0).
struct Residue {
  std::map<std::string, Int> units;
  std::vector<Int> coordinates;

  bool is_zero() const;
  friend bool operator==(const Residue&, const Residue&) = default;
};

Residue add(const Residue& a, const Residue& b, PrimeModulus l);

/// Tame symbol of (f, g) at the valuation of x_k, using
/// d(f,g) = (-1)^{v(f)v(g)} f^{v(g)} g^{-v(f)}.
Residue tame_symbol(const Monomial& f, const Monomial& g, std::size_t k, std::size_t d,
                    PrimeModulus l);

/// Residue of alpha along x_k. Throws InputError when k >= d.
Residue residue_along(const SymbolClass& alpha, std::size_t k);

/// Adjoins l-th roots of x_i for i in s: every symbol slot holding such an
/// x_i picks up a factor l. Throws InputError when s is empty or out of
/// range.
SymbolClass kummer_pullback(const SymbolClass& alpha, const std::vector<std::size_t>& s);

/// A point z on the stratum D_J (J maximal) lying on the auxiliary divisors
/// E_i for i in I'. Proper intersection forces |I'| + |J| <= d.
class StratumPoint {
public:
  /// Throws InputError unless J is nonempty, all indices of J are < d and
  /// |I'| + |J| <= d. Both sets are sorted and deduplicated.
  StratumPoint(std::vector<std::size_t> j, std::vector<std::size_t> i_prime, std::size_t d);

  const std::vector<std::size_t>& j() const { return j_; }
  const std::vector<std::size_t>& i_prime() const { return i_prime_; }
  std::size_t d() const { return d_; }

private:
  std::vector<std::size_t> j_;
  std::vector<std::size_t> i_prime_;
  std::size_t d_;
};

/// sum_{i in I} a_i m_{i,j} = delta_{j,j0} (mod l) for j in J, with
/// r = sum a_i m_{i,j0} and b_j = sum a_i m_{i,j} for j != j0, both over Z.
struct SplittingCertificate {
  std::size_t j0 = 0;
  std::vector<std::size_t> rows;            // I, increasing
  std::vector<Int> a;                       // a_i, aligned with rows
  Int r = 0;
  std::vector<std::pair<std::size_t, Int>> b; // (j, b_j) for every j != j0

  friend bool operator==(const SplittingCertificate&, const SplittingCertificate&) = default;
};

/// The congruences have no solution on the chosen rows.
class NotPirutkaError : public InputError {
public:
  NotPirutkaError(std::vector<std::size_t> rows, std::vector<std::size_t> cols);
  const std::vector<std::size_t>& rows() const { return rows_; }
  const std::vector<std::size_t>& cols() const { return cols_; }

private:
  std::vector<std::size_t> rows_;
  std::vector<std::size_t> cols_;
};

/// Takes the lexicographically least admissible I (the smallest
/// n - d + |J| indices outside I'), solves for the lexicographically least
/// a and fills in r and b. Throws NotPirutkaError when T[I,J] is rank
/// deficient mod l, InputError on shape mismatches or j0 not in J.
SplittingCertificate find_certificate(const PirutkaCandidate& t, PrimeModulus l,
                                      const StratumPoint& z, std::size_t j0);

enum class CertificateFault {
  none,
  j0_outside_stratum,
  support,       // I meets I' or leaves {0..n-1}
  size,          // |I| != n - d + |J|
  coefficients,  // a misaligned or outside {0..l-1}
  r_congruence,  // r != 1 mod l
  r_sum,         // r != sum a_i m_{i,j0}
  b_sum,         // b missing a column or b_j != sum a_i m_{i,j}
  stratum_congruence, // b_j != 0 mod l for some j in J \ {j0}
};

/// Stable machine-readable code, e.g. "r_congruence".
const char* fault_code(CertificateFault f);

/// Reports the first failing check only.
struct VerifyResult {
  bool ok = false;
  CertificateFault fault = CertificateFault::none;
};

VerifyResult verify_certificate(const SplittingCertificate& c, const PirutkaCandidate& t,
                                PrimeModulus l, const StratumPoint& z);

struct SplitAttempt {
  std::vector<std::size_t> j;
  std::size_t j0 = 0;
  std::vector<std::size_t> i_prime;
  std::optional<SplittingCertificate> certificate; // absent on failure
};

struct UniversalReport {
  bool splits = true;
  /// Every (J, j0, I') with J nonempty, j0 in J and |I'| = d - |J|, in
  /// lexicographic order of (|J|, J, j0, I').
  std::vector<SplitAttempt> attempts;
  /// Index into attempts of the first failure.
  std::optional<std::size_t> first_failure;
};

/// Runs find_certificate on every worst-case stratum configuration.
UniversalReport universal_split_check(const PirutkaCandidate& t, PrimeModulus l, std::size_t d);

} // namespace ramsplit
