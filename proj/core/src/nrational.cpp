#include "kstat/nrational.hpp"

#include "kstat/errors.hpp"

namespace kstat {

NRational nrational_reduce(NPoly num, NPoly den) {
  if (den.is_zero()) throw invalid_argument("rational function with zero denominator");
  return NRational(std::move(num), std::move(den));
}

NRational::NRational(Rational c) : num_(std::move(c)), den_(Rational(1)) {}

NRational::NRational(NPoly num) : num_(std::move(num)), den_(Rational(1)) {}

NRational::NRational(NPoly num, NPoly den) {
  if (den.is_zero()) throw invalid_argument("rational function with zero denominator");
  if (num.is_zero()) {
    den_ = NPoly(Rational(1));
    return;
  }
  if (!den.is_constant()) {
    NPoly g = gcd(num, den);
    if (!g.is_constant()) {
      num = divmod(num, g).first;
      den = divmod(den, g).first;
    }
  }
  const Rational lead = den.leading();
  num_ = num * Rational(1 / lead);
  den_ = den * Rational(1 / lead);
}

NRational NRational::over_falling_factorial(NPoly num, unsigned m) {
  if (num.is_zero()) return {};
  NPoly den(Rational(1));
  for (unsigned j = 0; j < m; ++j) {
    const Rational root(j);
    if (num.degree() > 0 && num.evaluate(root) == 0) {
      num = divide_by_linear(num, root);
    } else {
      den *= NPoly::linear(root);
    }
  }
  return NRational(std::move(num), std::move(den), Reduced{});
}

Rational NRational::constant_value() const {
  if (!is_constant()) throw invalid_argument("coefficient depends on n: " + to_string());
  return num_.coefficient(0) / den_.coefficient(0);
}

Rational NRational::evaluate(const Rational& at) const {
  const Rational d = den_.evaluate(at);
  if (d == 0) {
    // Name the vanishing linear factor when there is one.
    std::string factor = "(" + den_.to_string(true) + ")";
    if (den_.degree() > 1) {
      NPoly lin = NPoly::linear(at);
      factor = "(" + lin.to_string(true) + ")";
    }
    throw domain_error("denominator factor " + factor + " vanishes at n = " + at.get_str() +
                       "; the sample size is smaller than the estimator order");
  }
  return num_.evaluate(at) / d;
}

NRational NRational::operator-() const { return NRational(-num_, den_, Reduced{}); }

NRational& NRational::operator+=(const NRational& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    if (den_.is_constant()) return *this = NRational(num_ + o.num_, den_, Reduced{});
    return *this = NRational(num_ + o.num_, den_);
  }
  return *this = NRational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

NRational& NRational::operator-=(const NRational& o) { return *this += -o; }

NRational& NRational::operator*=(const NRational& o) {
  if (is_zero() || o.is_zero()) return *this = NRational();
  if (den_.is_constant() && o.den_.is_constant()) return *this = NRational(num_ * o.num_, NPoly(Rational(1)), Reduced{});
  return *this = NRational(num_ * o.num_, den_ * o.den_);
}

NRational& NRational::operator/=(const NRational& o) {
  if (o.is_zero()) throw invalid_argument("division by the zero rational function");
  return *this = NRational(num_ * o.den_, den_ * o.num_);
}

std::string NRational::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace kstat
