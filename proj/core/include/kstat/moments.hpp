#pragma once

#include "kstat/combinatorics.hpp"
#include "kstat/estimators.hpp"
#include "kstat/symbol_poly.hpp"

#include <functional>
#include <span>

namespace kstat {

/// Expectation over an i.i.d. sample of size n:
///   E[prod_j s_{w_j}] = sum_{pi in Pi_k} (n)_{|pi|} prod_{B in pi} m_{sum_{j in B} w_j},
/// extended linearly. Throws resource_error when a monomial has more
/// symbol slots than the enumeration limit.
MomentPoly expectation(const PowerSumPoly& p, EnumerationLimits limits = {});

/// kappa_t in moments: sum_{pi} (-1)^{|pi|-1}(|pi|-1)! prod_{blocks of S_pi} m_{block sum}.
MomentPoly cumulant_in_moments(const ExponentVector& t, unsigned vars, EnumerationLimits limits = {});

/// m_t in cumulants: sum_{pi} prod_{blocks of S_pi} k_{block sum}.
CumulantPoly moment_in_cumulants(const ExponentVector& t, unsigned vars, EnumerationLimits limits = {});

/// McCullagh's generalized cumulant kappa_pi over the given slots:
/// sum over rho >= pi of c(|rho|) prod_{B in rho} m_{sum of slots in B}.
MomentPoly generalized_cumulant(const SetPartition& pi, std::span<const ExponentVector> slots, unsigned vars);

/// prod_{B in pi} m_{sum of slots in B}
MomentPoly block_moment_product(const SetPartition& pi, std::span<const ExponentVector> slots, unsigned vars);

/// Product of the factors' cumulants written in moments.
MomentPoly cumulant_product_in_moments(const EstimatorSpec& spec, EnumerationLimits limits = {});

struct UnbiasednessReport {
  EstimatorSpec spec;
  bool passed = false;
  /// The expectation of the estimator had no n-dependence left.
  bool n_free = false;
  MomentPoly expectation;
  MomentPoly target;
  /// expectation - target
  MomentPoly difference;
};

using EstimatorGenerator = std::function<PowerSumPoly(const EstimatorSpec&)>;

UnbiasednessReport verify_unbiased(const EstimatorSpec& spec, const GenerationOptions& options = {});
/// Same check against an arbitrary generator (used for negative controls).
UnbiasednessReport verify_unbiased(const EstimatorSpec& spec, const EstimatorGenerator& generator,
                                   const GenerationOptions& options = {});

/// e_i in power sums.
PowerSumPoly elementary_from_powersums(unsigned i);
/// s_i in elementary symmetric polynomials.
ElementaryPoly powersums_from_elementary(unsigned i);
/// h_i in power sums: sum_{lambda |- i} s_lambda / z_lambda.
PowerSumPoly homogeneous_from_powersums(unsigned i);

}  // namespace kstat
