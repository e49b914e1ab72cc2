#include "kstat/errors.hpp"
#include "kstat/estimators.hpp"
#include "kstat/render.hpp"

#include "oracles.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace kstat;
using support::s;

TEST(Spec, ParseAndPrint) {
  const auto spec = EstimatorSpec::parse("[1,1];[1,0]");
  EXPECT_EQ(spec.vars, 2u);
  ASSERT_EQ(spec.factors.size(), 2u);
  EXPECT_EQ(spec.total_weight(), 3u);
  EXPECT_EQ(spec.to_string(), "[1,1];[1,0]");
  const unsigned orders[] = {2, 2};
  EXPECT_EQ(EstimatorSpec::polykay(orders).to_string(), "[2];[2]");
  EXPECT_EQ(EstimatorSpec::univariate(3), EstimatorSpec::parse("[3]"));
  EXPECT_THROW(EstimatorSpec::parse("[1];[1,0]"), std::exception);
  EXPECT_THROW(EstimatorSpec::parse("[0,0]"), std::exception);
  EXPECT_THROW(EstimatorSpec::parse("[1"), parse_error);
  EXPECT_THROW(k_statistic(0), kstat::invalid_argument);
  EXPECT_THROW(k_statistic_fast(0), kstat::invalid_argument);
}

TEST(Golden, LowOrderKStatistics) {
  EXPECT_EQ(render(k_statistic(1), RenderFormat::Human), "s1/n");
  EXPECT_EQ(render(k_statistic(2), RenderFormat::Human), "(n*s2 - s1^2)/(n*(n-1))");
  EXPECT_TRUE(equals(k_statistic(3), support::golden::k3()));
  EXPECT_EQ(render(k_statistic(3), RenderFormat::Human), "(n^2*s3 - 3*n*s1*s2 + 2*s1^3)/(n*(n-1)*(n-2))");
}

TEST(Golden, TextbookK4) {
  // (n+1)n^2 s4 - 4(n+1)n s1 s3 - 3(n-1)n s2^2 + 12 n s1^2 s2 - 6 s1^4, over (n)_4
  using support::n_pow;
  const PowerSumPoly want = ((n_pow(3) + n_pow(2)) * s({4}) - (n_pow(2, 4) + n_pow(1, 4)) * s({1}) * s({3}) -
                             (n_pow(2, 3) - n_pow(1, 3)) * s({2}).pow(2) + n_pow(1, 12) * s({1}).pow(2) * s({2}) -
                             NRational(6) * s({1}).pow(4)) *
                            support::over_ff(1, 4);
  EXPECT_TRUE(equals(k_statistic(4), want));
}

TEST(Golden, Polykays) {
  const unsigned o22[] = {2, 2};
  EXPECT_TRUE(equals(polykay(o22), support::golden::k22()));
  // k_{1,1} = (s1^2 - s2)/(n)_2
  const unsigned o11[] = {1, 1};
  EXPECT_TRUE(equals(polykay(o11), (s({1}).pow(2) - s({2})) * support::over_ff(1, 2)));
}

TEST(Golden, MultivariateExamples) {
  EXPECT_TRUE(equals(multivariate_k({2, 1}, 2), support::golden::k21_bivariate()));
  const ExponentVector f[] = {{1, 1}, {1, 0}};
  EXPECT_TRUE(equals(multivariate_polykay(f, 2), support::golden::k11_1()));
  EXPECT_EQ(render(multivariate_k({1, 1}, 2), RenderFormat::Human), "(n*s[1,1] - s[1,0]*s[0,1])/(n*(n-1))");
}

TEST(Structure, FactorOrderDoesNotMatter) {
  const unsigned a[] = {2, 1, 1};
  const unsigned b[] = {1, 2, 1};
  EXPECT_EQ(polykay(a), polykay(b));
  const ExponentVector f[] = {{1, 1}, {1, 0}};
  const ExponentVector g[] = {{1, 0}, {1, 1}};
  EXPECT_EQ(multivariate_polykay(f, 2), multivariate_polykay(g, 2));
}

TEST(Structure, MultivariateReducesToUnivariate) {
  for (unsigned i = 1; i <= 5; ++i) {
    EXPECT_EQ(multivariate_k({i}, 1), k_statistic(i));
    const PowerSumPoly embedded = k_statistic(i).substitute<SymbolKind::PowerSum>(
        2, [](const ExponentVector& w) { return PowerSumPoly::symbol({w[0], 0}); });
    EXPECT_EQ(multivariate_k({i, 0}, 2), embedded);
  }
  const unsigned o[] = {3, 1};
  const ExponentVector f[] = {{3}, {1}};
  EXPECT_EQ(multivariate_polykay(f, 1), polykay(o));
}

TEST(Structure, SwappingVariables) {
  auto swap = [](const PowerSumPoly& p) {
    return p.substitute<SymbolKind::PowerSum>(2,
                                              [](const ExponentVector& w) { return PowerSumPoly::symbol({w[1], w[0]}); });
  };
  EXPECT_EQ(multivariate_k({1, 2}, 2), swap(multivariate_k({2, 1}, 2)));
  EXPECT_EQ(multivariate_k({2, 2}, 2), swap(multivariate_k({2, 2}, 2)));
}

TEST(Structure, EveryTermHasFullWeightAndFallingFactorialDenominator) {
  for (unsigned i = 1; i <= 7; ++i) {
    const auto k = k_statistic(i);
    for (const auto& [m, c] : k.terms()) {
      EXPECT_EQ(m.weight(), i);
      // the denominator divides (n)_i
      EXPECT_TRUE(divmod(falling_factorial_poly(i), c.den()).second.is_zero());
    }
  }
}

TEST(Structure, EnumerationLimitOnTotalWeight) {
  const unsigned o[] = {7, 7, 7};
  EXPECT_THROW(polykay(o), resource_error);
  EXPECT_THROW(k_statistic(21), resource_error);
  EXPECT_NO_THROW(k_statistic_fast(21));
}

TEST(FastPath, ExpPolyCoefficients) {
  // p_m(y) = sum_k S(m,k) (-1)^{k-1} (k-1)! y^k
  for (unsigned m = 1; m <= 12; ++m) {
    const auto p = exp_poly(m);
    ASSERT_EQ(p.degree(), static_cast<int>(m));
    EXPECT_EQ(p.coefficients[0], 0);
    for (unsigned k = 1; k <= m; ++k) {
      oracle::Z want = oracle::stirling2(m, k) * oracle::factorial(k - 1);
      if (k % 2 == 0) want = -want;
      EXPECT_EQ(p.coefficients[k], want) << m << "," << k;
    }
  }
  const auto p2 = exp_poly(2);
  EXPECT_EQ(p2.coefficients[1], 1);
  EXPECT_EQ(p2.coefficients[2], -1);
}

TEST(FastPath, MatchesGeneralPath) {
  for (unsigned i = 1; i <= 10; ++i) EXPECT_TRUE(equals(k_statistic_fast(i), k_statistic(i))) << i;
}

TEST(FastPath, HighOrdersAreWellFormed) {
  const auto k = k_statistic_fast(22);
  EXPECT_EQ(k.size(), integer_partitions(22).size());
  for (const auto& [m, c] : k.terms()) EXPECT_EQ(m.weight(), 22u);
}

namespace {

support::Law three_point() {
  using oracle::Q;
  return {{{Q(0)}, {Q(1)}, {Q(3)}}, {Q(1, 2), Q(1, 3), Q(1, 6)}};
}

support::Law bivariate_law() {
  using oracle::Q;
  return {{{Q(0), Q(1)}, {Q(1), Q(0)}, {Q(2), Q(-1)}}, {Q(1, 2), Q(1, 3), Q(1, 6)}};
}

oracle::Q cumulant_product(const support::Law& law, const EstimatorSpec& spec) {
  oracle::Q prod = 1;
  for (const auto& t : spec.factors) prod *= support::joint_cumulant(law, t);
  return prod;
}

}  // namespace

// Unbiasedness checked numerically: exact expectation over every sample of
// size n0 from a finite law, against cumulants computed from the law.
class ExactDistribution : public ::testing::TestWithParam<std::string> {};

TEST_P(ExactDistribution, ExpectationEqualsCumulantProduct) {
  const EstimatorSpec spec = EstimatorSpec::parse(GetParam());
  const auto law = spec.vars == 1 ? three_point() : bivariate_law();
  const PowerSumPoly p = generate(spec);
  const oracle::Q want = cumulant_product(law, spec);
  const unsigned w = spec.total_weight();
  for (unsigned n0 = w; n0 <= std::min(w + 1, 7u); ++n0) {
    EXPECT_EQ(support::sample_mean(p, law, n0), want) << spec.to_string() << " n=" << n0;
  }
}

INSTANTIATE_TEST_SUITE_P(Specs, ExactDistribution,
                         ::testing::Values("[1]", "[2]", "[3]", "[4]", "[5]", "[6]", "[1];[1]", "[2];[1]", "[2];[2]",
                                           "[3];[1]", "[2];[1];[1]", "[1,1]", "[2,1]", "[1,2]", "[2,2]",
                                           "[1,1];[1,0]", "[2,0];[0,1]", "[1,1];[1,1]"),
                         [](const auto& info) {
                           std::string name;
                           for (char c : info.param) name += std::isdigit(static_cast<unsigned char>(c)) ? c : '_';
                           return name;
                         });

TEST(CrossCheck, UnivariateCumulantOracle) {
  // The set-partition cumulant oracle agrees with the moment recursion.
  const auto law = three_point();
  oracle::Discrete d;
  for (std::size_t i = 0; i < law.points.size(); ++i) {
    d.points.push_back(law.points[i][0]);
    d.probs.push_back(law.probs[i]);
  }
  const auto k = oracle::cumulants(oracle::raw_moments(d, 6));
  for (unsigned r = 1; r <= 6; ++r) EXPECT_EQ(support::joint_cumulant(law, {r}), k[r]);
}
