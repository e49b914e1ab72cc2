#pragma once

#include "kstat/npoly.hpp"

#include <string>

namespace kstat {

/// Reduced rational function num(n)/den(n). The denominator is monic and
/// shares no factor with the numerator; zero is 0/1.
class NRational {
 public:
  NRational() : den_(Rational(1)) {}
  NRational(long c) : NRational(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  NRational(Rational c);                          // NOLINT(google-explicit-constructor)
  explicit NRational(NPoly num);
  NRational(NPoly num, NPoly den);

  /// num / (n)_m with the common linear factors (n - j) cancelled directly;
  /// equivalent to NRational(num, (n)_m) but avoids the gcd.
  static NRational over_falling_factorial(NPoly num, unsigned m);

  const NPoly& num() const noexcept { return num_; }
  const NPoly& den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  /// True when the value does not depend on n.
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  /// Requires is_constant().
  Rational constant_value() const;

  /// Exact value at n = at; throws domain_error naming a vanishing factor.
  Rational evaluate(const Rational& at) const;

  NRational operator-() const;
  NRational& operator+=(const NRational& o);
  NRational& operator-=(const NRational& o);
  NRational& operator*=(const NRational& o);
  NRational& operator/=(const NRational& o);

  friend NRational operator+(NRational a, const NRational& b) { return a += b; }
  friend NRational operator-(NRational a, const NRational& b) { return a -= b; }
  friend NRational operator*(NRational a, const NRational& b) { return a *= b; }
  friend NRational operator/(NRational a, const NRational& b) { return a /= b; }
  friend bool operator==(const NRational& a, const NRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

 private:
  struct Reduced {};
  NRational(NPoly num, NPoly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

  NPoly num_;
  NPoly den_;
};

/// Canonical reduction of num/den; throws invalid_argument on a zero denominator.
NRational nrational_reduce(NPoly num, NPoly den);

}  // namespace kstat
