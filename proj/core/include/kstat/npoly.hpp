#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kstat {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Dense univariate polynomial in the sample-size symbol n with exact
/// rational coefficients. Coefficients are stored in ascending degree with
/// no trailing zeros; the zero polynomial has no coefficients.
class NPoly {
 public:
  NPoly() = default;
  explicit NPoly(Rational constant);
  explicit NPoly(std::vector<Rational> ascending);

  /// The indeterminate n.
  static NPoly n();
  /// c * n^degree
  static NPoly monomial(unsigned degree, Rational c);
  /// n - root
  static NPoly linear(const Rational& root);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  /// Coefficient of n^k (zero when k exceeds the degree).
  Rational coefficient(std::size_t k) const;
  const Rational& leading() const;
  std::span<const Rational> coefficients() const noexcept { return coeffs_; }

  Rational evaluate(const Rational& at) const;

  NPoly operator-() const;
  NPoly& operator+=(const NPoly& o);
  NPoly& operator-=(const NPoly& o);
  NPoly& operator*=(const NPoly& o);
  NPoly& operator*=(const Rational& c);

  friend NPoly operator+(NPoly a, const NPoly& b) { return a += b; }
  friend NPoly operator-(NPoly a, const NPoly& b) { return a -= b; }
  friend NPoly operator*(const NPoly& a, const NPoly& b);
  friend NPoly operator*(NPoly a, const Rational& c) { return a *= c; }
  friend NPoly operator*(const Rational& c, NPoly a) { return a *= c; }
  friend bool operator==(const NPoly& a, const NPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Leading coefficient divided out; zero stays zero.
  NPoly monic() const;

  /// Plain-text form in descending degree, e.g. "n^2 - 3*n + 2".
  /// `compact` drops the spaces around binary operators ("n-1").
  std::string to_string(bool compact = false) const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder of Euclidean division; throws on zero divisor.
std::pair<NPoly, NPoly> divmod(const NPoly& a, const NPoly& b);

/// Monic greatest common divisor over the rationals (zero if both are zero).
/// Computed with a primitive pseudo-remainder sequence over the integers.
NPoly gcd(const NPoly& a, const NPoly& b);

/// (n)_m = n (n-1) ... (n-m+1); (n)_0 = 1.
NPoly falling_factorial_poly(unsigned m);

/// Exact division by (n - root); requires `root` to be a root of `p`.
NPoly divide_by_linear(const NPoly& p, const Rational& root);

}  // namespace kstat
