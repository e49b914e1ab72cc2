#include "kstat/errors.hpp"
#include "kstat/estimators.hpp"
#include "kstat/evaluate.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

using namespace kstat;

namespace {

Dataset three() { return load_csv_text("x\n1\n2\n3\n"); }

void expect_parse_error(const std::string& text, std::size_t row, std::size_t column) {
  try {
    load_csv_text(text);
    FAIL() << "no error for: " << text;
  } catch (const parse_error& e) {
    EXPECT_EQ(e.row(), row) << text << ": " << e.what();
    EXPECT_EQ(e.column(), column) << text << ": " << e.what();
  }
}

std::vector<std::vector<Rational>> random_rows(std::mt19937_64& rng, std::size_t n, std::size_t cols) {
  std::uniform_int_distribution<int> d(-5, 5);
  std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(cols));
  for (auto& r : rows) {
    for (auto& v : r) v = d(rng);
  }
  return rows;
}

}  // namespace

TEST(Csv, LoadsExactColumns) {
  const Dataset d = load_csv_text("x, y\r\n1, 1/2\n-3,0.25\n  +4 ,-2/6\n\n");
  EXPECT_TRUE(d.exact());
  EXPECT_EQ(d.n(), 3u);
  EXPECT_EQ(d.vars(), 2u);
  EXPECT_EQ(d.columns(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(d.exact_rows()[0][1], Rational(1, 2));
  EXPECT_EQ(d.exact_rows()[1][0], -3);
  EXPECT_EQ(d.exact_rows()[1][1], Rational(1, 4));
  EXPECT_EQ(d.exact_rows()[2][1], Rational(-1, 3));
  // leading zeros are decimal, not octal
  const Dataset z = load_csv_text("x\n010\n0.010\n07/010\n");
  EXPECT_EQ(z.exact_rows()[0][0], 10);
  EXPECT_EQ(z.exact_rows()[1][0], Rational(1, 100));
  EXPECT_EQ(z.exact_rows()[2][0], Rational(7, 10));
}

TEST(Csv, AnyFloatCellMakesTheFileFloat) {
  const Dataset d = load_csv_text("x\n1\n2.5e0\n1/4\n");
  EXPECT_FALSE(d.exact());
  EXPECT_DOUBLE_EQ(d.float_rows()[1][0], 2.5);
  EXPECT_DOUBLE_EQ(d.float_rows()[2][0], 0.25);
}

TEST(Csv, ErrorsCarryRowAndColumn) {
  expect_parse_error("x\n1\noops\n", 3, 1);
  expect_parse_error("x,y\n1,2\n3\n", 3, 2);
  expect_parse_error("x,y\n1,2\n3,4,5\n", 3, 3);
  expect_parse_error("x,y\n1,zz\n", 2, 2);
  expect_parse_error("x\n1/0\n", 2, 1);
  expect_parse_error("x\nnan\n", 2, 1);
  expect_parse_error("x\n\n2\n", 2, 1);
  EXPECT_THROW(load_csv_text(""), parse_error);
  EXPECT_THROW(load_csv_text("x\n"), parse_error);
  EXPECT_THROW(load_csv_text(",x\n1,2\n"), parse_error);
  EXPECT_THROW(load_csv_file("/nonexistent/data.csv"), parse_error);
}

TEST(Evaluate, SpotChecksOnOneTwoThree) {
  EXPECT_EQ(format_value(evaluate_estimator(k_statistic(1), three())), "2");
  EXPECT_EQ(format_value(evaluate_estimator(k_statistic(2), three())), "1");
  EXPECT_EQ(format_value(evaluate_estimator(k_statistic(3), three())), "0");
  EXPECT_THROW(evaluate_estimator(k_statistic(4), three()), domain_error);
}

TEST(Evaluate, FloatPath) {
  const Dataset d = load_csv_text("x\n1.5\n2\n3.25e0\n7\n");
  const double k2 = to_double(evaluate_estimator(k_statistic(2), d));
  std::vector<double> x{1.5, 2, 3.25, 7};
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / 4;
  double ss = 0;
  for (double v : x) ss += (v - mean) * (v - mean);
  EXPECT_NEAR(k2, ss / 3, 1e-12);
  EXPECT_EQ(format_value(Value(0.5)), "0.5");
}

TEST(Evaluate, MismatchedVariables) {
  EXPECT_THROW(evaluate_estimator(multivariate_k({1, 1}, 2), three()), kstat::invalid_argument);
}

TEST(Evaluate, PowerSumsAreShared) {
  const auto p = k_statistic(4);
  const auto syms = symbols_of(p);
  EXPECT_EQ(syms.size(), 4u);
  const auto table = power_sums(three(), syms);
  EXPECT_EQ(std::get<Rational>(table.at({2})), 14);
  EXPECT_EQ(std::get<Rational>(table.at({4})), 98);
}

TEST(Evaluate, UnbiasedVarianceOnRandomExactData) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<std::size_t> size(2, 12);
  const auto k2 = k_statistic(2);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = size(rng);
    auto rows = random_rows(rng, n, 1);
    Rational mean = 0;
    for (const auto& r : rows) mean += r[0];
    mean /= static_cast<long>(n);
    Rational ss = 0;
    for (const auto& r : rows) ss += (r[0] - mean) * (r[0] - mean);
    const Rational want = ss / static_cast<long>(n - 1);
    EXPECT_EQ(std::get<Rational>(evaluate_estimator(k2, Dataset({"x"}, rows))), want);
  }
}

TEST(Evaluate, UnbiasedCovarianceOnRandomExactData) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::size_t> size(2, 12);
  const auto k11 = multivariate_k({1, 1}, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = size(rng);
    auto rows = random_rows(rng, n, 2);
    Rational mx = 0, my = 0;
    for (const auto& r : rows) {
      mx += r[0];
      my += r[1];
    }
    mx /= static_cast<long>(n);
    my /= static_cast<long>(n);
    Rational sp = 0;
    for (const auto& r : rows) sp += (r[0] - mx) * (r[1] - my);
    EXPECT_EQ(std::get<Rational>(evaluate_estimator(k11, Dataset({"x", "y"}, rows))), sp / static_cast<long>(n - 1));
  }
}

TEST(Evaluate, InvariantUnderRowPermutation) {
  std::mt19937_64 rng(37);
  const unsigned o[] = {2, 1};
  const std::vector<PowerSumPoly> estimators{k_statistic(3), k_statistic(4), polykay(o), multivariate_k({2, 1}, 2)};
  for (const auto& p : estimators) {
    const auto rows = random_rows(rng, 9, p.vars());
    std::vector<std::string> cols(p.vars(), "c");
    const Dataset d(cols, rows);
    std::vector<std::size_t> order(d.n());
    std::iota(order.begin(), order.end(), 0);
    const Value base = evaluate_estimator(p, d);
    for (int t = 0; t < 5; ++t) {
      std::shuffle(order.begin(), order.end(), rng);
      EXPECT_EQ(std::get<Rational>(evaluate_estimator(p, d.permuted(order))), std::get<Rational>(base));
    }
  }
}

// Statistical check with a fixed seed: mean of k3 over many samples of a
// two-point law lands within 4 standard errors of kappa_3.
TEST(Evaluate, MonteCarloK3) {
  constexpr std::size_t kSamples = 100000;
  constexpr std::size_t kN = 10;
  constexpr double p = 0.2;
  const double kappa3 = p * (1 - p) * (1 - 2 * p);
  const auto k3 = k_statistic(3);
  std::mt19937_64 rng(41);
  std::bernoulli_distribution coin(p);
  double sum = 0, sum_sq = 0;
  for (std::size_t s = 0; s < kSamples; ++s) {
    std::vector<std::vector<double>> rows(kN, std::vector<double>(1));
    for (auto& r : rows) r[0] = coin(rng) ? 1.0 : 0.0;
    const double v = to_double(evaluate_estimator(k3, Dataset({"x"}, std::move(rows))));
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / kSamples;
  const double var = (sum_sq - kSamples * mean * mean) / (kSamples - 1);
  const double se = std::sqrt(var / kSamples);
  EXPECT_LT(std::abs(mean - kappa3), 4 * se) << "mean " << mean << " kappa3 " << kappa3 << " se " << se;
}
