#pragma once

// Test-side helpers that bridge kstat types and the brute-force oracles.

#include "kstat/estimators.hpp"
#include "kstat/symbol_poly.hpp"

#include "oracles.hpp"

namespace support {

using kstat::ExponentVector;
using kstat::NPoly;
using kstat::NRational;
using kstat::PowerSumPoly;

inline PowerSumPoly s(ExponentVector w) { return PowerSumPoly::symbol(std::move(w)); }

// c / (n)_m
inline NRational over_ff(long c, unsigned m) {
  return NRational::over_falling_factorial(NPoly(kstat::Rational(c)), m);
}

inline NRational n_pow(unsigned e, long c = 1) { return NRational(NPoly::monomial(e, kstat::Rational(c))); }

// Sample rows of a multivariate discrete law.
struct Law {
  std::vector<std::vector<oracle::Q>> points;
  std::vector<oracle::Q> probs;
};

// Value of P on a concrete sample (rows of values), n = rows.size().
inline oracle::Q evaluate_on(const PowerSumPoly& p, const std::vector<std::vector<oracle::Q>>& rows) {
  const auto inst = kstat::substitute_n(p, static_cast<long>(rows.size()));
  oracle::Q total = 0;
  for (const auto& [m, c] : inst.terms) {
    oracle::Q term = c;
    for (const auto& [w, e] : m.factors()) {
      oracle::Q sum = 0;
      for (const auto& row : rows) {
        oracle::Q prod = 1;
        for (std::size_t j = 0; j < w.size(); ++j) {
          for (unsigned r = 0; r < w[j]; ++r) prod *= row[j];
        }
        sum += prod;
      }
      for (unsigned r = 0; r < e; ++r) term *= sum;
    }
    total += term;
  }
  return total;
}

// E[P] over all samples of size n0 from the law.
inline oracle::Q sample_mean(const PowerSumPoly& p, const Law& law, unsigned n0) {
  const std::size_t k = law.points.size();
  std::vector<std::size_t> idx(n0, 0);
  std::vector<std::vector<oracle::Q>> rows(n0);
  oracle::Q total = 0;
  while (true) {
    oracle::Q prob = 1;
    for (unsigned i = 0; i < n0; ++i) {
      rows[i] = law.points[idx[i]];
      prob *= law.probs[idx[i]];
    }
    total += prob * evaluate_on(p, rows);
    std::size_t pos = 0;
    while (pos < n0 && ++idx[pos] == k) idx[pos++] = 0;
    if (pos == n0) break;
  }
  return total;
}

// E[prod_j X_{c_j}] under the law, c a list of column indices.
inline oracle::Q joint_moment(const Law& law, const std::vector<unsigned>& cols) {
  oracle::Q total = 0;
  for (std::size_t s = 0; s < law.points.size(); ++s) {
    oracle::Q prod = law.probs[s];
    for (auto c : cols) prod *= law.points[s][c];
    total += prod;
  }
  return total;
}

// Joint cumulant kappa_t: the variables are column j repeated t_j times,
// kappa = sum_pi (-1)^{|pi|-1} (|pi|-1)! prod_B E[prod_{i in B} X_i].
inline oracle::Q joint_cumulant(const Law& law, const ExponentVector& t) {
  std::vector<unsigned> col;
  for (unsigned j = 0; j < t.size(); ++j) col.insert(col.end(), t[j], j);
  oracle::Q total = 0;
  for (const auto& pi : oracle::set_partitions(static_cast<unsigned>(col.size()))) {
    oracle::Q term = oracle::factorial(static_cast<unsigned>(pi.size()) - 1);
    if (pi.size() % 2 == 0) term = -term;
    for (const auto& block : pi) {
      std::vector<unsigned> cols;
      for (auto p : block) cols.push_back(col[p]);
      term *= joint_moment(law, cols);
    }
    total += term;
  }
  return total;
}

// Published closed forms.
namespace golden {

inline PowerSumPoly k3() {
  return (n_pow(2) * s({3}) - n_pow(1, 3) * s({1}) * s({2}) + NRational(2) * s({1}).pow(3)) * over_ff(1, 3);
}

inline PowerSumPoly k22() {
  const auto s1 = s({1}), s2 = s({2}), s3 = s({3}), s4 = s({4});
  return (-s4 + s2 * s2) * over_ff(1, 2) -
         (NRational(2) * s4 - s2 * s2 - NRational(2) * s3 * s1 + s1 * s1 * s2) * over_ff(2, 3) +
         (NRational(-6) * s4 + NRational(8) * s3 * s1 + NRational(3) * s2 * s2 - NRational(6) * s1 * s1 * s2 +
          s1.pow(4)) *
             over_ff(1, 4);
}

inline PowerSumPoly k21_bivariate() {
  const auto s10 = s({1, 0}), s01 = s({0, 1}), s11 = s({1, 1}), s20 = s({2, 0}), s21 = s({2, 1});
  return (n_pow(2) * s21 - n_pow(1, 2) * s10 * s11 - n_pow(1) * s20 * s01 + NRational(2) * s10 * s10 * s01) *
         over_ff(1, 3);
}

inline PowerSumPoly k11_1() {
  const auto s10 = s({1, 0}), s01 = s({0, 1}), s11 = s({1, 1}), s20 = s({2, 0}), s21 = s({2, 1});
  return (s10 * s11 - s21) * over_ff(1, 2) -
         (s10 * s10 * s01 - NRational(2) * s10 * s11 + NRational(2) * s21 - s20 * s01) * over_ff(1, 3);
}

}  // namespace golden

}  // namespace support
