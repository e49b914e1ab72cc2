#include "kstat/moments.hpp"

#include "kstat/errors.hpp"

#include <map>

namespace kstat {

namespace {

void check_index(const ExponentVector& t, unsigned vars) {
  if (t.size() != vars) {
    throw invalid_argument("index vector " + to_string(t) + " does not have " + std::to_string(vars) + " components");
  }
  if (is_zero_vector(t)) throw invalid_argument("index vector must be non-zero");
}

Monomial block_monomial(const Subdivision& S, unsigned vars) {
  std::vector<Monomial::Factor> factors;
  for (const auto& block : S.blocks()) factors.emplace_back(block.degree_sum(vars), block.multiplicity);
  return Monomial(std::move(factors));
}

// sum_S weight(S) * scale(|S|) * x^{blocks of S}
template <SymbolKind Kind, class Scale>
SymbolPoly<Kind> subdivision_expansion(const Multiset& M, const EnumerationLimits& limits, Scale scale) {
  std::map<Monomial, NPoly, MonomialOrder> acc;
  for (const auto& S : subdivisions(M, limits)) {
    acc[block_monomial(S, M.vars())] += scale(S.size()) * Rational(S.weight());
  }
  SymbolPoly<Kind> out(M.vars());
  for (auto& [m, c] : acc) out.add_term(m, NRational(std::move(c)));
  return out;
}

}  // namespace

MomentPoly expectation(const PowerSumPoly& p, EnumerationLimits limits) {
  const unsigned vars = p.vars();
  MomentPoly out(vars);
  for (const auto& [mono, coef] : p.terms()) {
    if (mono.is_unit()) {
      out += MomentPoly::constant(vars, coef);
      continue;
    }
    const Multiset slots = Multiset::from_elements(vars, mono.expanded());
    MomentPoly e = subdivision_expansion<SymbolKind::Moment>(
        slots, limits, [](unsigned blocks) { return falling_factorial_poly(blocks); });
    out += e * coef;
  }
  return out;
}

MomentPoly cumulant_in_moments(const ExponentVector& t, unsigned vars, EnumerationLimits limits) {
  check_index(t, vars);
  return subdivision_expansion<SymbolKind::Moment>(Multiset::of_index_vector(t), limits, [](unsigned blocks) {
    return NPoly(Rational(cumulant_coefficient(blocks)));
  });
}

CumulantPoly moment_in_cumulants(const ExponentVector& t, unsigned vars, EnumerationLimits limits) {
  check_index(t, vars);
  return subdivision_expansion<SymbolKind::Cumulant>(Multiset::of_index_vector(t), limits,
                                                     [](unsigned) { return NPoly(Rational(1)); });
}

namespace {

std::vector<ExponentVector> block_sums(const SetPartition& pi, std::span<const ExponentVector> slots, unsigned vars) {
  if (pi.ground_size() != slots.size()) {
    throw invalid_argument("partition of [" + std::to_string(pi.ground_size()) + "] does not match " +
                           std::to_string(slots.size()) + " slots");
  }
  for (const auto& w : slots) check_index(w, vars);
  std::vector<ExponentVector> sums(pi.block_count(), ExponentVector(vars, 0));
  for (unsigned p = 0; p < pi.ground_size(); ++p) {
    auto& target = sums[pi.rgs()[p]];
    target = add_vectors(target, slots[p]);
  }
  return sums;
}

}  // namespace

MomentPoly generalized_cumulant(const SetPartition& pi, std::span<const ExponentVector> slots, unsigned vars) {
  const auto sums = block_sums(pi, slots, vars);
  const auto b = static_cast<unsigned>(sums.size());
  // coarsenings rho >= pi correspond to set partitions tau of pi's blocks
  std::map<Monomial, BigInt, MonomialOrder> acc;
  SetPartitionStream tau(b);
  while (tau.advance()) {
    const unsigned merged_count = tau.block_count();
    std::vector<ExponentVector> merged(merged_count, ExponentVector(vars, 0));
    for (unsigned j = 0; j < b; ++j) merged[tau.rgs()[j]] = add_vectors(merged[tau.rgs()[j]], sums[j]);
    std::vector<Monomial::Factor> factors;
    for (auto& w : merged) factors.emplace_back(std::move(w), 1u);
    acc[Monomial(std::move(factors))] += cumulant_coefficient(merged_count);
  }
  MomentPoly out(vars);
  for (const auto& [m, c] : acc) out.add_term(m, NRational(Rational(c)));
  return out;
}

MomentPoly block_moment_product(const SetPartition& pi, std::span<const ExponentVector> slots, unsigned vars) {
  std::vector<Monomial::Factor> factors;
  for (auto& w : block_sums(pi, slots, vars)) factors.emplace_back(std::move(w), 1u);
  return MomentPoly::term(vars, Monomial(std::move(factors)), NRational(1));
}

MomentPoly cumulant_product_in_moments(const EstimatorSpec& spec, EnumerationLimits limits) {
  spec.validate();
  MomentPoly out = MomentPoly::constant(spec.vars, NRational(1));
  for (const auto& t : spec.factors) out = out * cumulant_in_moments(t, spec.vars, limits);
  return out;
}

UnbiasednessReport verify_unbiased(const EstimatorSpec& spec, const GenerationOptions& options) {
  return verify_unbiased(
      spec, [&options](const EstimatorSpec& s) { return generate(s, options); }, options);
}

UnbiasednessReport verify_unbiased(const EstimatorSpec& spec, const EstimatorGenerator& generator,
                                   const GenerationOptions& options) {
  UnbiasednessReport report{spec, false, false, MomentPoly(spec.vars), MomentPoly(spec.vars), MomentPoly(spec.vars)};
  const PowerSumPoly estimator = generator(spec);
  report.expectation = expectation(estimator, options.limits);
  report.target = cumulant_product_in_moments(spec, options.limits);
  report.difference = report.expectation - report.target;
  report.n_free = report.expectation.is_n_free();
  report.passed = report.n_free && report.difference.is_zero();
  return report;
}

namespace {

Monomial partition_monomial(const IntegerPartition& lambda) {
  std::vector<Monomial::Factor> factors;
  for (auto [part, count] : lambda.multiplicities()) factors.emplace_back(ExponentVector{part}, count);
  return Monomial(std::move(factors));
}

void check_degree(unsigned i) {
  if (i == 0) throw invalid_argument("symmetric-function degree must be positive");
}

}  // namespace

PowerSumPoly elementary_from_powersums(unsigned i) {
  check_degree(i);
  PowerSumPoly out(1);
  const BigInt i_fact = factorial(i);
  for (const auto& lambda : integer_partitions(i)) {
    BigInt c = d_lambda(lambda);
    for (auto [part, count] : lambda.multiplicities()) {
      BigInt x;
      mpz_pow_ui(x.get_mpz_t(), cumulant_coefficient(part).get_mpz_t(), count);
      c *= x;
    }
    out.add_term(partition_monomial(lambda), NRational(Rational(c, i_fact)));
  }
  return out;
}

ElementaryPoly powersums_from_elementary(unsigned i) {
  check_degree(i);
  ElementaryPoly out(1);
  const Rational lead((i % 2 == 1) ? static_cast<long>(i) : -static_cast<long>(i));
  for (const auto& lambda : integer_partitions(i)) {
    BigInt den = 1;
    for (auto [part, count] : lambda.multiplicities()) den *= factorial(count);
    Rational c(cumulant_coefficient(lambda.length()), den);
    c.canonicalize();
    out.add_term(partition_monomial(lambda), NRational(Rational(lead * c)));
  }
  return out;
}

PowerSumPoly homogeneous_from_powersums(unsigned i) {
  check_degree(i);
  PowerSumPoly out(1);
  for (const auto& lambda : integer_partitions(i)) {
    BigInt z = 1;
    for (auto [part, count] : lambda.multiplicities()) {
      BigInt jp;
      mpz_ui_pow_ui(jp.get_mpz_t(), part, count);
      z *= jp * factorial(count);
    }
    out.add_term(partition_monomial(lambda), NRational(Rational(BigInt(1), z)));
  }
  return out;
}

}  // namespace kstat
