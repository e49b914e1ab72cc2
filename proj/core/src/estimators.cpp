#include "kstat/estimators.hpp"

#include "kstat/errors.hpp"

#include <map>

namespace kstat {

EstimatorSpec EstimatorSpec::univariate(unsigned order) {
  if (order == 0) throw invalid_argument("k-statistic order must be positive");
  return EstimatorSpec{1, {ExponentVector{order}}};
}

EstimatorSpec EstimatorSpec::polykay(std::span<const unsigned> orders) {
  if (orders.empty()) throw invalid_argument("polykay needs at least one order");
  EstimatorSpec spec{1, {}};
  for (unsigned r : orders) {
    if (r == 0) throw invalid_argument("polykay orders must be positive");
    spec.factors.push_back(ExponentVector{r});
  }
  return spec;
}

EstimatorSpec EstimatorSpec::multivariate(std::vector<ExponentVector> factors) {
  if (factors.empty()) throw invalid_argument("estimator needs at least one factor");
  EstimatorSpec spec{static_cast<unsigned>(factors.front().size()), std::move(factors)};
  spec.validate();
  return spec;
}

EstimatorSpec EstimatorSpec::parse(std::string_view text) {
  return multivariate(parse_exponent_vector_list(text));
}

unsigned EstimatorSpec::total_weight() const {
  unsigned w = 0;
  for (const auto& t : factors) w += total_degree(t);
  return w;
}

void EstimatorSpec::validate() const {
  if (vars == 0) throw invalid_argument("estimator over zero variables");
  if (factors.empty()) throw invalid_argument("estimator needs at least one factor");
  for (const auto& t : factors) {
    if (t.size() != vars) {
      throw invalid_argument("factor " + kstat::to_string(t) + " does not have " + std::to_string(vars) + " components");
    }
    if (is_zero_vector(t)) throw invalid_argument("factor " + kstat::to_string(t) + " is the zero vector");
  }
}

std::string EstimatorSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += ';';
    out += kstat::to_string(factors[i]);
  }
  return out;
}

namespace {

using IntPoly = std::vector<BigInt>;

void add_scaled(IntPoly& acc, const IntPoly& p, const BigInt& scale) {
  if (acc.size() < p.size()) acc.resize(p.size(), BigInt(0));
  for (std::size_t i = 0; i < p.size(); ++i) acc[i] += scale * p[i];
}

IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

NPoly to_npoly(const IntPoly& p) {
  std::vector<Rational> c;
  c.reserve(p.size());
  for (const auto& x : p) c.emplace_back(x);
  return NPoly(std::move(c));
}

// (n-m)(n-m-1)...(n-top+1); the empty product is 1.
IntPoly shifted_falling_factorial(unsigned m, unsigned top) {
  IntPoly p{BigInt(1)};
  for (unsigned j = m; j < top; ++j) p = multiply(p, IntPoly{BigInt(-static_cast<long>(j)), BigInt(1)});
  return p;
}

// Accumulates sum_t scalar_t * monomial_t / (n)_{m_t} over a shared (n)_W.
class CommonDenominatorSum {
 public:
  explicit CommonDenominatorSum(unsigned top) : top_(top) {
    for (unsigned m = 0; m <= top; ++m) shifts_.push_back(shifted_falling_factorial(m, top));
  }

  void add(const Monomial& mono, const BigInt& scalar, unsigned m) { add_shifted(mono, shifts_.at(m), scalar); }

  void add_shifted(const Monomial& mono, const IntPoly& numerator, const BigInt& scalar) {
    add_scaled(numerators_[mono], numerator, scalar);
  }

  PowerSumPoly finish(unsigned vars) && {
    PowerSumPoly out(vars);
    for (auto& [mono, num] : numerators_) {
      NPoly p = to_npoly(num);
      if (p.is_zero()) continue;
      out.add_term(mono, NRational::over_falling_factorial(std::move(p), top_));
    }
    return out;
  }

  const IntPoly& shift(unsigned m) const { return shifts_.at(m); }

 private:
  unsigned top_;
  std::vector<IntPoly> shifts_;
  std::map<Monomial, IntPoly, MonomialOrder> numerators_;
};

struct OuterTerm {
  unsigned size;
  BigInt scalar;  // weight(S) * c(|S|)
  std::vector<ExponentVector> pooled;  // block degree sums, repeated by g
};

std::vector<OuterTerm> outer_terms(const ExponentVector& t, const EnumerationLimits& limits) {
  const Multiset M = Multiset::of_index_vector(t);
  const unsigned vars = M.vars();
  std::vector<OuterTerm> out;
  for (const auto& S : subdivisions(M, limits)) {
    OuterTerm term{S.size(), S.weight() * cumulant_coefficient(S.size()), {}};
    for (const auto& block : S.blocks()) {
      term.pooled.insert(term.pooled.end(), block.multiplicity, block.degree_sum(vars));
    }
    out.push_back(std::move(term));
  }
  return out;
}

using InnerSum = std::vector<std::pair<Monomial, BigInt>>;

// sum_{S over subdivisions of P} weight(S) prod_blocks c(|B|)^g s_{sum B}^g
InnerSum inner_sum(const Multiset& P, const EnumerationLimits& limits) {
  std::map<Monomial, BigInt, MonomialOrder> acc;
  for (const auto& S : subdivisions(P, limits)) {
    BigInt coef = S.weight();
    std::vector<Monomial::Factor> factors;
    for (const auto& block : S.blocks()) {
      BigInt c;
      mpz_pow_ui(c.get_mpz_t(), cumulant_coefficient(block.length()).get_mpz_t(), block.multiplicity);
      coef *= c;
      factors.emplace_back(block.degree_sum(P.vars()), block.multiplicity);
    }
    acc[Monomial(std::move(factors))] += coef;
  }
  InnerSum out;
  for (auto& [m, c] : acc) {
    if (c != 0) out.emplace_back(m, std::move(c));
  }
  return out;
}

}  // namespace

PowerSumPoly generate(const EstimatorSpec& spec, const GenerationOptions& options) {
  spec.validate();
  const unsigned vars = spec.vars;
  const unsigned top = spec.total_weight();
  // the pooled multiset can reach `top` elements
  options.limits.check(top);

  std::vector<std::vector<OuterTerm>> outer;
  for (const auto& t : spec.factors) outer.push_back(outer_terms(t, options.limits));

  CommonDenominatorSum sum(top);
  std::map<std::vector<Multiset::Entry>, InnerSum> inner_cache;

  // odometer over one outer subdivision per factor
  std::vector<std::size_t> pick(outer.size(), 0);
  while (true) {
    unsigned size = 0;
    BigInt scalar = 1;
    std::vector<ExponentVector> pooled;
    for (std::size_t f = 0; f < outer.size(); ++f) {
      const OuterTerm& term = outer[f][pick[f]];
      size += term.size;
      scalar *= term.scalar;
      pooled.insert(pooled.end(), term.pooled.begin(), term.pooled.end());
    }
    const Multiset P = Multiset::from_elements(vars, pooled);
    auto it = inner_cache.find(P.support());
    if (it == inner_cache.end()) it = inner_cache.emplace(P.support(), inner_sum(P, options.limits)).first;
    for (const auto& [mono, c] : it->second) sum.add(mono, scalar * c, size);

    std::size_t f = 0;
    while (f < outer.size() && ++pick[f] == outer[f].size()) pick[f++] = 0;
    if (f == outer.size()) break;
  }
  return std::move(sum).finish(vars);
}

PowerSumPoly k_statistic(unsigned i, const GenerationOptions& options) {
  return generate(EstimatorSpec::univariate(i), options);
}

ExpPoly<BigInt> exp_poly(unsigned m) {
  if (m == 0) throw invalid_argument("exp_poly: m must be positive");
  const auto row = stirling2_row(m);
  ExpPoly<BigInt> p;
  p.coefficients.assign(m + 1, BigInt(0));
  for (unsigned k = 1; k <= m; ++k) p.coefficients[k] = row[k] * cumulant_coefficient(k);
  return p;
}

PowerSumPoly k_statistic_fast(unsigned i) {
  if (i == 0) throw invalid_argument("k-statistic order must be positive");
  std::vector<IntPoly> p(i + 1);
  for (unsigned j = 1; j <= i; ++j) p[j] = exp_poly(j).coefficients;

  CommonDenominatorSum sum(i);
  // y^m -> c(m)/(n)_m = c(m) (n-m)_{i-m} / (n)_i
  std::vector<IntPoly> y_image(i + 1);
  for (unsigned m = 1; m <= i; ++m) {
    y_image[m] = sum.shift(m);
    for (auto& x : y_image[m]) x *= cumulant_coefficient(m);
  }

  for (const auto& lambda : integer_partitions(i)) {
    IntPoly p_lambda{BigInt(1)};
    std::vector<Monomial::Factor> factors;
    for (auto [part, count] : lambda.multiplicities()) {
      for (unsigned r = 0; r < count; ++r) p_lambda = multiply(p_lambda, p[part]);
      factors.emplace_back(ExponentVector{part}, count);
    }
    IntPoly numerator;
    for (std::size_t m = 1; m < p_lambda.size(); ++m) {
      if (p_lambda[m] != 0) add_scaled(numerator, y_image[m], p_lambda[m]);
    }
    sum.add_shifted(Monomial(std::move(factors)), numerator, d_lambda(lambda));
  }
  return std::move(sum).finish(1);
}

ExpPoly<MomentPoly> compound_poisson_moments(unsigned i) {
  if (i == 0) throw invalid_argument("compound_poisson_moments: i must be positive");
  ExpPoly<MomentPoly> c;
  c.coefficients.assign(i + 1, MomentPoly(1));
  for (const auto& lambda : integer_partitions(i)) {
    std::vector<Monomial::Factor> factors;
    for (auto [part, count] : lambda.multiplicities()) factors.emplace_back(ExponentVector{part}, count);
    const unsigned nu = lambda.length();
    NRational coef(falling_factorial_poly(nu) * Rational(d_lambda(lambda)));
    c.coefficients[nu].add_term(Monomial(std::move(factors)), coef);
  }
  return c;
}

MomentPoly substitute_singleton_ratio(const ExpPoly<MomentPoly>& c) {
  const unsigned vars = c.coefficients.empty() ? 1 : c.coefficients.front().vars();
  MomentPoly out(vars);
  for (std::size_t m = 0; m < c.coefficients.size(); ++m) {
    if (c.coefficients[m].is_zero()) continue;
    if (m == 0) {
      // y^0 evaluates to 1
      out += c.coefficients[0];
      continue;
    }
    const auto mm = static_cast<unsigned>(m);
    const NRational ratio(NPoly(Rational(cumulant_coefficient(mm))), falling_factorial_poly(mm));
    out += c.coefficients[m] * ratio;
  }
  return out;
}

PowerSumPoly polykay(std::span<const unsigned> orders, const GenerationOptions& options) {
  return generate(EstimatorSpec::polykay(orders), options);
}

PowerSumPoly multivariate_k(const ExponentVector& t, unsigned vars, const GenerationOptions& options) {
  EstimatorSpec spec{vars, {t}};
  return generate(spec, options);
}

PowerSumPoly multivariate_polykay(std::span<const ExponentVector> factors, unsigned vars,
                                  const GenerationOptions& options) {
  if (factors.empty()) throw invalid_argument("multivariate polykay needs at least one factor");
  EstimatorSpec spec{vars, std::vector<ExponentVector>(factors.begin(), factors.end())};
  return generate(spec, options);
}

}  // namespace kstat
