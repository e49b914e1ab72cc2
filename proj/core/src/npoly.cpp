#include "kstat/npoly.hpp"

#include "kstat/errors.hpp"

#include <algorithm>

namespace kstat {

namespace {

using IntPoly = std::vector<BigInt>;

void trim_int(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Scales by the lcm of denominators and divides out the content; the sign
// of the leading coefficient is made positive.
IntPoly primitive_part(const NPoly& p) {
  BigInt l = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  IntPoly out;
  out.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) out.emplace_back(c.get_num() * (l / c.get_den()));
  BigInt g = 0;
  for (const auto& c : out) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) return {};
  if (out.back() < 0) g = -g;
  for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return out;
}

void make_primitive(IntPoly& p) {
  BigInt g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) return;
  if (p.back() < 0) g = -g;
  if (g == 1) return;
  for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// Remainder of a by b up to a non-zero integer factor.
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  const std::size_t db = b.size() - 1;
  const BigInt& lb = b.back();
  BigInt g, sa, sb;
  while (!a.empty() && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    mpz_gcd(g.get_mpz_t(), lb.get_mpz_t(), a.back().get_mpz_t());
    sa = lb / g;
    sb = a.back() / g;
    for (auto& c : a) c *= sa;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= sb * b[i];
    trim_int(a);
  }
  return a;
}

}  // namespace

NPoly::NPoly(Rational constant) {
  constant.canonicalize();
  if (constant != 0) coeffs_.push_back(std::move(constant));
}

NPoly::NPoly(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

NPoly NPoly::n() { return monomial(1, Rational(1)); }

NPoly NPoly::monomial(unsigned degree, Rational c) {
  NPoly p;
  if (c == 0) return p;
  p.coeffs_.assign(degree + 1, Rational(0));
  p.coeffs_[degree] = std::move(c);
  return p;
}

NPoly NPoly::linear(const Rational& root) { return NPoly({-root, Rational(1)}); }

void NPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational NPoly::coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

const Rational& NPoly::leading() const {
  if (coeffs_.empty()) throw invalid_argument("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

Rational NPoly::evaluate(const Rational& at) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

NPoly NPoly::operator-() const {
  NPoly out(*this);
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

NPoly& NPoly::operator+=(const NPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

NPoly& NPoly::operator-=(const NPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

NPoly operator*(const NPoly& a, const NPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  NPoly p;
  p.coeffs_ = std::move(out);
  p.trim();
  return p;
}

NPoly& NPoly::operator*=(const NPoly& o) { return *this = *this * o; }

NPoly& NPoly::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

NPoly NPoly::monic() const {
  if (is_zero()) return {};
  return *this * Rational(1 / leading());
}

std::string NPoly::to_string(bool compact) const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) out += '-';
    } else {
      out += compact ? (negative ? "-" : "+") : (negative ? " - " : " + ");
    }
    first = false;
    std::string body;
    if (k == 0 || mag != 1) body = mag.get_str();
    if (k > 0) {
      if (!body.empty()) body += '*';
      body += 'n';
      if (k > 1) body += '^' + std::to_string(k);
    }
    out += body;
  }
  return out;
}

std::pair<NPoly, NPoly> divmod(const NPoly& a, const NPoly& b) {
  if (b.is_zero()) throw invalid_argument("polynomial division by zero");
  std::vector<Rational> r(a.coefficients().begin(), a.coefficients().end());
  const auto bc = b.coefficients();
  const std::size_t db = bc.size() - 1;
  if (r.size() < bc.size()) return {NPoly(), a};
  std::vector<Rational> q(r.size() - db, Rational(0));
  const Rational inv = 1 / bc.back();
  for (std::size_t k = r.size(); k-- > db;) {
    if (r[k] == 0) continue;
    const Rational f = r[k] * inv;
    q[k - db] = f;
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] -= f * bc[i];
  }
  return {NPoly(std::move(q)), NPoly(std::move(r))};
}

NPoly gcd(const NPoly& a, const NPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return NPoly(Rational(1));
  IntPoly x = primitive_part(a);
  IntPoly y = primitive_part(b);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    if (y.size() == 1) return NPoly(Rational(1));
    IntPoly r = pseudo_remainder(std::move(x), y);
    make_primitive(r);
    x = std::move(y);
    y = std::move(r);
  }
  std::vector<Rational> q;
  q.reserve(x.size());
  for (auto& c : x) q.emplace_back(c);
  return NPoly(std::move(q)).monic();
}

NPoly falling_factorial_poly(unsigned m) {
  NPoly p(Rational(1));
  for (unsigned j = 0; j < m; ++j) p *= NPoly::linear(Rational(j));
  return p;
}

NPoly divide_by_linear(const NPoly& p, const Rational& root) {
  const auto c = p.coefficients();
  if (c.empty()) return {};
  std::vector<Rational> q(c.size() - 1, Rational(0));
  Rational carry = 0;
  for (std::size_t k = c.size(); k-- > 1;) {
    carry = c[k] + carry * root;
    q[k - 1] = carry;
  }
  if (c[0] + carry * root != 0) throw invalid_argument("divide_by_linear: not a root");
  return NPoly(std::move(q));
}

}  // namespace kstat
