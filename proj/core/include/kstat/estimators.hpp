#pragma once

#include "kstat/combinatorics.hpp"
#include "kstat/symbol_poly.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace kstat {

/// Which estimator to build: a product of (joint) cumulants, one index
/// vector per factor. {[3]} is k_3, {[2],[2]} is k_{2,2}, {[2,1]} is k_{21},
/// {[1,1],[1,0]} is k_{11,1}.
struct EstimatorSpec {
  unsigned vars = 1;
  std::vector<ExponentVector> factors;

  static EstimatorSpec univariate(unsigned order);
  static EstimatorSpec polykay(std::span<const unsigned> orders);
  static EstimatorSpec multivariate(std::vector<ExponentVector> factors);

  /// Parses "[2];[2]" or "[1,1];[1,0]"; vars inferred from the vectors.
  static EstimatorSpec parse(std::string_view text);

  /// Sum over factors of |t|.
  unsigned total_weight() const;
  /// Throws invalid_argument on an empty factor list or a malformed factor.
  void validate() const;
  /// "[2];[2]"
  std::string to_string() const;

  friend bool operator==(const EstimatorSpec&, const EstimatorSpec&) = default;
};

struct GenerationOptions {
  EnumerationLimits limits;
};

/// Coefficients of a polynomial in the formal variable y, index = power.
template <class Coefficient>
struct ExpPoly {
  std::vector<Coefficient> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

/// Shared generator: sum over tuples of outer subdivisions (one per factor)
/// of [prod c(|S_f|) weight(S_f)] / (n)_{sum |S_f|} times the inner
/// subdivision sum over the pooled block multiset.
PowerSumPoly generate(const EstimatorSpec& spec, const GenerationOptions& options = {});

/// k_i through set-partition subdivisions.
PowerSumPoly k_statistic(unsigned i, const GenerationOptions& options = {});

/// p_m(y) = sum_k S(m,k) (-1)^{k-1} (k-1)! y^k.
ExpPoly<BigInt> exp_poly(unsigned m);

/// k_i through exponential polynomials: no set partitions, cost driven by
/// the integer partitions of i.
PowerSumPoly k_statistic_fast(unsigned i);

/// c_i(y) = sum_{lambda |- i} y^{nu} (n)_{nu} d_lambda m_lambda.
ExpPoly<MomentPoly> compound_poisson_moments(unsigned i);

/// Replaces y^m by (-1)^{m-1}(m-1)!/(n)_m and sums.
MomentPoly substitute_singleton_ratio(const ExpPoly<MomentPoly>& c);

PowerSumPoly polykay(std::span<const unsigned> orders, const GenerationOptions& options = {});

PowerSumPoly multivariate_k(const ExponentVector& t, unsigned vars, const GenerationOptions& options = {});

PowerSumPoly multivariate_polykay(std::span<const ExponentVector> factors, unsigned vars,
                                  const GenerationOptions& options = {});

}  // namespace kstat
