#pragma once

#include "kstat/errors.hpp"
#include "kstat/exponent_vector.hpp"
#include "kstat/nrational.hpp"

#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace kstat {

/// Which family of symbols x_w a polynomial is written in.
enum class SymbolKind {
  PowerSum,     // s_w
  Moment,       // m_w
  Cumulant,     // k_w
  Elementary,   // e_j (univariate)
  Homogeneous,  // h_j (univariate)
};

char symbol_letter(SymbolKind kind);

/// Product of symbols x_w^p. Factors are kept in graded order of w with
/// positive powers; the empty product is the unit monomial.
class Monomial {
 public:
  using Factor = std::pair<ExponentVector, unsigned>;

  Monomial() = default;
  /// Merges and sorts; zero powers are dropped.
  explicit Monomial(std::vector<Factor> factors);
  static Monomial symbol(ExponentVector w, unsigned power = 1);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool is_unit() const noexcept { return factors_.empty(); }
  /// Number of symbols counted with multiplicity.
  unsigned degree() const;
  /// sum_j p_j * |w_j|
  unsigned weight() const;
  /// Symbol indices repeated by power, in graded order.
  std::vector<ExponentVector> expanded() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Factor> factors_;
};

/// Ascending symbol degree, then the expanded symbol sequences compared
/// lexicographically under the graded vector order.
int monomial_compare(const Monomial& a, const Monomial& b);

struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const { return monomial_compare(a, b) < 0; }
};

/// Sparse polynomial in the symbols of `Kind` with NRational coefficients.
/// Terms never hold zero coefficients and every symbol index has length vars().
template <SymbolKind Kind>
class SymbolPoly {
 public:
  using Terms = std::map<Monomial, NRational, MonomialOrder>;
  static constexpr SymbolKind kind = Kind;

  explicit SymbolPoly(unsigned vars = 1) : vars_(vars) {}

  static SymbolPoly constant(unsigned vars, NRational c);
  static SymbolPoly symbol(ExponentVector w, NRational c = NRational(1));
  static SymbolPoly term(unsigned vars, Monomial m, NRational c);

  unsigned vars() const noexcept { return vars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Coefficient of m (zero when absent).
  NRational coefficient(const Monomial& m) const;
  /// Adds c * m; validates the symbols.
  void add_term(const Monomial& m, const NRational& c);

  /// Largest monomial weight (0 for constants and the zero polynomial).
  unsigned max_weight() const;
  /// True when no coefficient depends on n.
  bool is_n_free() const;

  SymbolPoly operator-() const;
  SymbolPoly& operator+=(const SymbolPoly& o);
  SymbolPoly& operator-=(const SymbolPoly& o);
  SymbolPoly& operator*=(const NRational& c);

  friend SymbolPoly operator+(SymbolPoly a, const SymbolPoly& b) { return a += b; }
  friend SymbolPoly operator-(SymbolPoly a, const SymbolPoly& b) { return a -= b; }
  friend SymbolPoly operator*(SymbolPoly a, const NRational& c) { return a *= c; }
  friend SymbolPoly operator*(const NRational& c, SymbolPoly a) { return a *= c; }
  friend SymbolPoly operator*(const SymbolPoly& a, const SymbolPoly& b) { return multiply(a, b); }

  static SymbolPoly multiply(const SymbolPoly& a, const SymbolPoly& b);
  SymbolPoly pow(unsigned e) const;

  /// Same terms read in another symbol family.
  template <SymbolKind Other>
  SymbolPoly<Other> relabel() const {
    SymbolPoly<Other> out(vars_);
    for (const auto& [m, c] : terms_) out.add_term(m, c);
    return out;
  }

  /// Replaces every symbol x_w by image(w) and expands.
  template <SymbolKind Other>
  SymbolPoly<Other> substitute(unsigned out_vars,
                               const std::function<SymbolPoly<Other>(const ExponentVector&)>& image) const {
    std::map<ExponentVector, SymbolPoly<Other>, GradedOrder> cache;
    SymbolPoly<Other> result(out_vars);
    for (const auto& [m, c] : terms_) {
      SymbolPoly<Other> prod = SymbolPoly<Other>::constant(out_vars, c);
      for (const auto& [w, p] : m.factors()) {
        auto it = cache.find(w);
        if (it == cache.end()) it = cache.emplace(w, image(w)).first;
        prod = prod * it->second.pow(p);
      }
      result += prod;
    }
    return result;
  }

  friend bool operator==(const SymbolPoly& a, const SymbolPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

 private:
  void check_vars(const SymbolPoly& o) const;
  void check_monomial(const Monomial& m) const;

  unsigned vars_;
  Terms terms_;
};

using PowerSumPoly = SymbolPoly<SymbolKind::PowerSum>;
using MomentPoly = SymbolPoly<SymbolKind::Moment>;
using CumulantPoly = SymbolPoly<SymbolKind::Cumulant>;
using ElementaryPoly = SymbolPoly<SymbolKind::Elementary>;
using HomogeneousPoly = SymbolPoly<SymbolKind::Homogeneous>;

extern template class SymbolPoly<SymbolKind::PowerSum>;
extern template class SymbolPoly<SymbolKind::Moment>;
extern template class SymbolPoly<SymbolKind::Cumulant>;
extern template class SymbolPoly<SymbolKind::Elementary>;
extern template class SymbolPoly<SymbolKind::Homogeneous>;

/// True iff P - Q canonicalizes to zero; throws invalid_argument on a
/// variable-count mismatch.
template <SymbolKind Kind>
bool equals(const SymbolPoly<Kind>& p, const SymbolPoly<Kind>& q) {
  if (p.vars() != q.vars()) {
    throw invalid_argument("equals: variable counts differ");
  }
  return (p - q).is_zero();
}

/// A power-sum polynomial with the sample size fixed: exact rational coefficients.
struct InstantiatedPoly {
  unsigned vars = 1;
  std::map<Monomial, Rational, MonomialOrder> terms;
};

/// Evaluates every coefficient at n = n0. Throws domain_error naming the
/// vanishing denominator factor.
InstantiatedPoly substitute_n(const PowerSumPoly& p, long n0);

}  // namespace kstat
