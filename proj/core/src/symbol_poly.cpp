#include "kstat/symbol_poly.hpp"

#include "kstat/errors.hpp"

#include <algorithm>

namespace kstat {

char symbol_letter(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::PowerSum:
      return 's';
    case SymbolKind::Moment:
      return 'm';
    case SymbolKind::Cumulant:
      return 'k';
    case SymbolKind::Elementary:
      return 'e';
    case SymbolKind::Homogeneous:
      return 'h';
  }
  return '?';
}

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return graded_compare(a.first, b.first) < 0; });
  for (auto& f : factors) {
    if (f.second == 0) continue;
    if (!factors_.empty() && factors_.back().first == f.first) {
      factors_.back().second += f.second;
    } else {
      factors_.push_back(std::move(f));
    }
  }
}

Monomial Monomial::symbol(ExponentVector w, unsigned power) {
  return Monomial(std::vector<Factor>{{std::move(w), power}});
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

unsigned Monomial::weight() const {
  unsigned d = 0;
  for (const auto& [w, p] : factors_) d += p * total_degree(w);
  return d;
}

std::vector<ExponentVector> Monomial::expanded() const {
  std::vector<ExponentVector> out;
  for (const auto& [w, p] : factors_) out.insert(out.end(), p, w);
  return out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  std::vector<Monomial::Factor> all = a.factors_;
  all.insert(all.end(), b.factors_.begin(), b.factors_.end());
  return Monomial(std::move(all));
}

int monomial_compare(const Monomial& a, const Monomial& b) {
  const unsigned da = a.degree();
  const unsigned db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  // walk both expanded sequences in lock step
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t ia = 0, ib = 0;
  unsigned ra = fa.empty() ? 0 : fa[0].second;
  unsigned rb = fb.empty() ? 0 : fb[0].second;
  while (ia < fa.size() && ib < fb.size()) {
    const int c = graded_compare(fa[ia].first, fb[ib].first);
    if (c != 0) return c;
    const unsigned step = std::min(ra, rb);
    ra -= step;
    rb -= step;
    if (ra == 0 && ++ia < fa.size()) ra = fa[ia].second;
    if (rb == 0 && ++ib < fb.size()) rb = fb[ib].second;
  }
  return 0;
}

template <SymbolKind Kind>
SymbolPoly<Kind> SymbolPoly<Kind>::constant(unsigned vars, NRational c) {
  SymbolPoly p(vars);
  p.add_term(Monomial(), c);
  return p;
}

template <SymbolKind Kind>
SymbolPoly<Kind> SymbolPoly<Kind>::symbol(ExponentVector w, NRational c) {
  SymbolPoly p(static_cast<unsigned>(w.size()));
  p.add_term(Monomial::symbol(std::move(w)), c);
  return p;
}

template <SymbolKind Kind>
SymbolPoly<Kind> SymbolPoly<Kind>::term(unsigned vars, Monomial m, NRational c) {
  SymbolPoly p(vars);
  p.add_term(m, c);
  return p;
}

template <SymbolKind Kind>
NRational SymbolPoly<Kind>::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? NRational() : it->second;
}

template <SymbolKind Kind>
void SymbolPoly<Kind>::check_monomial(const Monomial& m) const {
  for (const auto& [w, p] : m.factors()) {
    if (w.size() != vars_) {
      throw invalid_argument(std::string("symbol ") + symbol_letter(Kind) + to_string(w) + " does not have " +
                             std::to_string(vars_) + " components");
    }
    if (is_zero_vector(w)) throw invalid_argument("symbol index must be a non-zero vector");
  }
}

template <SymbolKind Kind>
void SymbolPoly<Kind>::check_vars(const SymbolPoly& o) const {
  if (o.vars_ != vars_) {
    throw invalid_argument("polynomials over " + std::to_string(vars_) + " and " + std::to_string(o.vars_) +
                           " variables cannot be combined");
  }
}

template <SymbolKind Kind>
void SymbolPoly<Kind>::add_term(const Monomial& m, const NRational& c) {
  if (c.is_zero()) return;
  check_monomial(m);
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

template <SymbolKind Kind>
unsigned SymbolPoly<Kind>::max_weight() const {
  unsigned w = 0;
  for (const auto& t : terms_) w = std::max(w, t.first.weight());
  return w;
}

template <SymbolKind Kind>
bool SymbolPoly<Kind>::is_n_free() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_constant(); });
}

template <SymbolKind Kind>
SymbolPoly<Kind> SymbolPoly<Kind>::operator-() const {
  SymbolPoly out(*this);
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

template <SymbolKind Kind>
SymbolPoly<Kind>& SymbolPoly<Kind>::operator+=(const SymbolPoly& o) {
  check_vars(o);
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

template <SymbolKind Kind>
SymbolPoly<Kind>& SymbolPoly<Kind>::operator-=(const SymbolPoly& o) {
  return *this += -o;
}

template <SymbolKind Kind>
SymbolPoly<Kind>& SymbolPoly<Kind>::operator*=(const NRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

template <SymbolKind Kind>
SymbolPoly<Kind> SymbolPoly<Kind>::multiply(const SymbolPoly& a, const SymbolPoly& b) {
  a.check_vars(b);
  SymbolPoly out(a.vars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      auto [it, inserted] = out.terms_.try_emplace(ma * mb, ca * cb);
      if (!inserted) {
        it->second += ca * cb;
        if (it->second.is_zero()) out.terms_.erase(it);
      }
    }
  }
  return out;
}

template <SymbolKind Kind>
SymbolPoly<Kind> SymbolPoly<Kind>::pow(unsigned e) const {
  SymbolPoly result = constant(vars_, NRational(1));
  SymbolPoly base = *this;
  while (e > 0) {
    if (e & 1u) result = multiply(result, base);
    e >>= 1u;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

template class SymbolPoly<SymbolKind::PowerSum>;
template class SymbolPoly<SymbolKind::Moment>;
template class SymbolPoly<SymbolKind::Cumulant>;
template class SymbolPoly<SymbolKind::Elementary>;
template class SymbolPoly<SymbolKind::Homogeneous>;

InstantiatedPoly substitute_n(const PowerSumPoly& p, long n0) {
  InstantiatedPoly out;
  out.vars = p.vars();
  const Rational at(n0);
  for (const auto& [m, c] : p.terms()) {
    Rational v = c.evaluate(at);
    if (v != 0) out.terms.emplace(m, std::move(v));
  }
  return out;
}

}  // namespace kstat
