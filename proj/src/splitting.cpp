#include "ramsplit/splitting.hpp"

#include <algorithm>
#include <set>

#include "ramsplit/subsets.hpp"

namespace ramsplit {

namespace {

std::string index_list(const std::vector<std::size_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
  return s + "}";
}

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

} // namespace

SymbolClass::SymbolClass(PrimeModulus l, std::size_t d, std::string unramified)
    : l_(l), d_(d), unramified_(std::move(unramified)) {
  if (d == 0) throw InputError("symbol class needs at least one coordinate");
}

void SymbolClass::check_index(std::size_t i) const {
  if (i >= d_)
    throw InputError("coordinate index " + std::to_string(i + 1) + " out of range 1.." +
                     std::to_string(d_));
}

void SymbolClass::add_unit_term(const std::string& u, std::size_t i, Int c) {
  check_index(i);
  if (u.empty()) return;
  const UnitKey key{u, i};
  const Int v = l_.reduce(units_[key] + l_.reduce(c));
  if (v == 0) units_.erase(key);
  else units_[key] = v;
}

void SymbolClass::add_pair_term(std::size_t i, std::size_t j, Int c) {
  check_index(i);
  check_index(j);
  if (i == j) {
    add_unit_term(kMinusOne, i, c);
    return;
  }
  if (i > j) {
    std::swap(i, j);
    c = -c;
  }
  const PairKey key{i, j};
  const Int v = l_.reduce(pairs_[key] + l_.reduce(c));
  if (v == 0) pairs_.erase(key);
  else pairs_[key] = v;
}

SymbolClass SymbolClass::operator+(const SymbolClass& other) const {
  if (!(l_ == other.l_) || d_ != other.d_) throw InputError("adding classes over different (l, d)");
  SymbolClass sum = *this;
  for (const auto& [key, c] : other.units_) sum.add_unit_term(key.first, key.second, c);
  for (const auto& [key, c] : other.pairs_) sum.add_pair_term(key.first, key.second, c);
  return sum;
}

SymbolClass normal_form(const std::vector<RawSymbol>& raw, std::size_t d, PrimeModulus l,
                        std::string unramified) {
  SymbolClass out(l, d, std::move(unramified));
  for (const auto& s : raw) {
    if (s.f.exponents.size() != d || s.g.exponents.size() != d)
      throw InputError("monomial exponent vector must have length " + std::to_string(d));
    const Int c = s.coefficient;
    // (u x^e, w x^k) = (u,w) + sum_j k_j (u, x_j) - sum_i e_i (w, x_i)
    //                        + sum_{i,j} e_i k_j (x_i, x_j)
    for (std::size_t j = 0; j < d; ++j) {
      if (s.g.exponents[j] != 0) out.add_unit_term(s.f.unit, j, l.reduce(c) * l.reduce(s.g.exponents[j]));
      if (s.f.exponents[j] != 0) out.add_unit_term(s.g.unit, j, -(l.reduce(c) * l.reduce(s.f.exponents[j])));
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (s.f.exponents[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j)
        if (s.g.exponents[j] != 0)
          out.add_pair_term(i, j, l.reduce(c) * l.reduce(s.f.exponents[i]) % l.value() *
                                      l.reduce(s.g.exponents[j]));
    }
  }
  return out;
}

std::vector<RawSymbol> to_symbols(const SymbolClass& alpha) {
  const std::size_t d = alpha.d();
  auto coordinate = [d](std::size_t i) {
    Monomial m{"", std::vector<Int>(d, 0)};
    m.exponents[i] = 1;
    return m;
  };
  std::vector<RawSymbol> out;
  for (const auto& [key, c] : alpha.unit_terms())
    out.push_back({Monomial{key.first, std::vector<Int>(d, 0)}, coordinate(key.second), c});
  for (const auto& [key, c] : alpha.pair_terms())
    out.push_back({coordinate(key.first), coordinate(key.second), c});
  return out;
}

bool Residue::is_zero() const {
  return units.empty() && std::all_of(coordinates.begin(), coordinates.end(),
                                      [](Int x) { return x == 0; });
}

Residue add(const Residue& a, const Residue& b, PrimeModulus l) {
  Residue out = a;
  if (out.coordinates.size() < b.coordinates.size()) out.coordinates.resize(b.coordinates.size(), 0);
  for (std::size_t j = 0; j < b.coordinates.size(); ++j)
    out.coordinates[j] = l.reduce(out.coordinates[j] + b.coordinates[j]);
  for (const auto& [u, c] : b.units) {
    const Int v = l.reduce(out.units[u] + c);
    if (v == 0) out.units.erase(u);
    else out.units[u] = v;
  }
  return out;
}

Residue tame_symbol(const Monomial& f, const Monomial& g, std::size_t k, std::size_t d,
                    PrimeModulus l) {
  if (k >= d) throw InputError("residue coordinate out of range");
  if (f.exponents.size() != d || g.exponents.size() != d)
    throw InputError("monomial exponent vector must have length " + std::to_string(d));
  const Int vf = f.exponents[k], vg = g.exponents[k];
  Residue out;
  out.coordinates.assign(d, 0);
  auto bump = [&](const std::string& u, Int c) {
    if (u.empty()) return;
    const Int v = l.reduce(out.units[u] + c);
    if (v == 0) out.units.erase(u);
    else out.units[u] = v;
  };
  // sign exponent taken mod l, not mod 2: same class (-1 is an l-th power
  // for odd l) and it keeps the formal residue additive
  bump(kMinusOne, l.reduce(vf) * l.reduce(vg));
  bump(f.unit, vg);
  bump(g.unit, -vf);
  for (std::size_t j = 0; j < d; ++j)
    if (j != k) out.coordinates[j] = l.reduce(f.exponents[j] * vg - g.exponents[j] * vf);
  return out;
}

Residue residue_along(const SymbolClass& alpha, std::size_t k) {
  const std::size_t d = alpha.d();
  const PrimeModulus l = alpha.modulus();
  if (k >= d)
    throw InputError("residue index " + std::to_string(k + 1) + " out of range 1.." +
                     std::to_string(d));
  Residue total;
  total.coordinates.assign(d, 0);
  for (const auto& s : to_symbols(alpha)) {
    Residue r = tame_symbol(s.f, s.g, k, d, l);
    for (auto& x : r.coordinates) x = l.reduce(x * s.coefficient);
    for (auto& [u, c] : r.units) c = l.reduce(c * s.coefficient);
    std::erase_if(r.units, [](const auto& kv) { return kv.second == 0; });
    total = add(total, r, l);
  }
  return total;
}

SymbolClass kummer_pullback(const SymbolClass& alpha, const std::vector<std::size_t>& s) {
  if (s.empty()) throw InputError("kummer_pullback needs a nonempty coordinate set");
  const std::set<std::size_t> roots(s.begin(), s.end());
  for (auto i : roots)
    if (i >= alpha.d()) throw InputError("coordinate index out of range");
  const PrimeModulus l = alpha.modulus();
  // x_i = z_i^l multiplies each slot holding such an x_i by l
  auto factor = [&](std::size_t i) { return roots.count(i) ? l.value() : Int{1}; };
  SymbolClass out(l, alpha.d(), alpha.unramified_part());
  for (const auto& [key, c] : alpha.unit_terms())
    out.add_unit_term(key.first, key.second, c * factor(key.second));
  for (const auto& [key, c] : alpha.pair_terms())
    out.add_pair_term(key.first, key.second, c * factor(key.first) % l.value() * factor(key.second));
  return out;
}

StratumPoint::StratumPoint(std::vector<std::size_t> j, std::vector<std::size_t> i_prime,
                           std::size_t d)
    : j_(sorted_unique(std::move(j))), i_prime_(sorted_unique(std::move(i_prime))), d_(d) {
  if (j_.empty()) throw InputError("stratum needs a nonempty J");
  if (j_.back() >= d) throw InputError("stratum index out of range 1.." + std::to_string(d));
  if (i_prime_.size() + j_.size() > d)
    throw InputError("stratum violates |I'| + |J| <= d");
}

NotPirutkaError::NotPirutkaError(std::vector<std::size_t> rows, std::vector<std::size_t> cols)
    : InputError("not Pirutka: T[I,J] rank deficient for I=" + index_list(rows) +
                 " J=" + index_list(cols)),
      rows_(std::move(rows)), cols_(std::move(cols)) {}

namespace {

void check_shapes(const PirutkaCandidate& t, const StratumPoint& z) {
  if (z.d() != t.d())
    throw InputError("stratum is for d=" + std::to_string(z.d()) + " but T has " +
                     std::to_string(t.d()) + " columns");
  if (!z.i_prime().empty() && z.i_prime().back() >= t.n())
    throw InputError("I' index out of range 1.." + std::to_string(t.n()));
}

} // namespace

SplittingCertificate find_certificate(const PirutkaCandidate& t, PrimeModulus l,
                                      const StratumPoint& z, std::size_t j0) {
  check_shapes(t, z);
  const auto& cols = z.j();
  const auto pos = std::find(cols.begin(), cols.end(), j0);
  if (pos == cols.end()) throw InputError("j0 must lie in J");
  const std::size_t n = t.n(), d = t.d();
  const std::size_t size = n - d + cols.size();

  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < n && rows.size() < size; ++i)
    if (!std::binary_search(z.i_prime().begin(), z.i_prime().end(), i)) rows.push_back(i);

  // unknowns a_i (i in I), one equation per j in J
  const IntMatrix system = t.matrix().submatrix(rows, cols).transpose();
  std::vector<Int> rhs(cols.size(), 0);
  rhs[static_cast<std::size_t>(pos - cols.begin())] = 1;
  const auto a = solve_mod(system, rhs, l);
  if (!a) throw NotPirutkaError(rows, cols);

  SplittingCertificate cert;
  cert.j0 = j0;
  cert.rows = rows;
  cert.a = *a;
  for (std::size_t j = 0; j < d; ++j) {
    Int sum = 0;
    for (std::size_t s = 0; s < rows.size(); ++s) sum += cert.a[s] * t.matrix()(rows[s], j);
    if (j == j0) cert.r = sum;
    else cert.b.emplace_back(j, sum);
  }
  return cert;
}

const char* fault_code(CertificateFault f) {
  switch (f) {
  case CertificateFault::none: return "none";
  case CertificateFault::j0_outside_stratum: return "j0_outside_stratum";
  case CertificateFault::support: return "support";
  case CertificateFault::size: return "size";
  case CertificateFault::coefficients: return "coefficients";
  case CertificateFault::r_sum: return "r_sum";
  case CertificateFault::r_congruence: return "r_congruence";
  case CertificateFault::b_sum: return "b_sum";
  case CertificateFault::stratum_congruence: return "stratum_congruence";
  }
  return "unknown";
}

VerifyResult verify_certificate(const SplittingCertificate& c, const PirutkaCandidate& t,
                                PrimeModulus l, const StratumPoint& z) {
  auto fail = [](CertificateFault f) { return VerifyResult{false, f}; };
  if (z.d() != t.d()) return fail(CertificateFault::support);
  const auto& cols = z.j();
  if (!std::binary_search(cols.begin(), cols.end(), c.j0)) return fail(CertificateFault::j0_outside_stratum);

  for (std::size_t s = 0; s < c.rows.size(); ++s) {
    const std::size_t i = c.rows[s];
    if (i >= t.n() || (s > 0 && c.rows[s - 1] >= i) ||
        std::binary_search(z.i_prime().begin(), z.i_prime().end(), i))
      return fail(CertificateFault::support);
  }
  if (c.rows.size() != t.n() - t.d() + cols.size()) return fail(CertificateFault::size);
  if (c.a.size() != c.rows.size() ||
      std::any_of(c.a.begin(), c.a.end(), [&](Int x) { return x < 0 || x >= l.value(); }))
    return fail(CertificateFault::coefficients);

  auto column_sum = [&](std::size_t j) {
    Int sum = 0;
    for (std::size_t s = 0; s < c.rows.size(); ++s) sum += c.a[s] * t.matrix()(c.rows[s], j);
    return sum;
  };
  if (l.reduce(c.r) != 1) return fail(CertificateFault::r_congruence);
  if (c.r != column_sum(c.j0)) return fail(CertificateFault::r_sum);

  if (c.b.size() + 1 != t.d()) return fail(CertificateFault::b_sum);
  std::size_t expect = 0;
  for (const auto& [j, bj] : c.b) {
    if (expect == c.j0) ++expect;
    if (j != expect || bj != column_sum(j)) return fail(CertificateFault::b_sum);
    ++expect;
  }
  for (const auto& [j, bj] : c.b)
    if (std::binary_search(cols.begin(), cols.end(), j) && l.reduce(bj) != 0)
      return fail(CertificateFault::stratum_congruence);
  return VerifyResult{true, CertificateFault::none};
}

UniversalReport universal_split_check(const PirutkaCandidate& t, PrimeModulus l, std::size_t d) {
  if (d != t.d())
    throw InputError("matrix has " + std::to_string(t.d()) + " columns, expected d=" +
                     std::to_string(d));
  UniversalReport report;
  for (std::size_t k = 1; k <= d; ++k) {
    for_each_combination(d, k, [&](const std::vector<std::size_t>& cols) {
      for (const std::size_t j0 : cols) {
        for_each_combination(t.n(), d - k, [&](const std::vector<std::size_t>& i_prime) {
          SplitAttempt attempt{cols, j0, i_prime, std::nullopt};
          try {
            attempt.certificate = find_certificate(t, l, StratumPoint(cols, i_prime, d), j0);
          } catch (const NotPirutkaError&) {
            if (!report.first_failure) report.first_failure = report.attempts.size();
            report.splits = false;
          }
          report.attempts.push_back(std::move(attempt));
          return true;
        });
      }
      return true;
    });
  }
  return report;
}

} // namespace ramsplit
