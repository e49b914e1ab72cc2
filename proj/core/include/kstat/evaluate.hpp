#pragma once

#include "kstat/symbol_poly.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kstat {

/// Exact rational or floating-point scalar.
using Value = std::variant<Rational, double>;

std::string format_value(const Value& v);
double to_double(const Value& v);

/// A rectangular sample: n rows of v values. Either every cell is exact or
/// the whole dataset is floating point.
class Dataset {
 public:
  Dataset(std::vector<std::string> columns, std::vector<std::vector<Rational>> rows);
  Dataset(std::vector<std::string> columns, std::vector<std::vector<double>> rows);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  unsigned vars() const noexcept { return static_cast<unsigned>(columns_.size()); }
  std::size_t n() const noexcept;
  bool exact() const noexcept { return std::holds_alternative<std::vector<std::vector<Rational>>>(rows_); }

  const std::vector<std::vector<Rational>>& exact_rows() const;
  const std::vector<std::vector<double>>& float_rows() const;

  /// Same data with the rows permuted by `order`.
  Dataset permuted(const std::vector<std::size_t>& order) const;

 private:
  std::vector<std::string> columns_;
  std::variant<std::vector<std::vector<Rational>>, std::vector<std::vector<double>>> rows_;
};

/// Header row then numeric rows. Cells are exact when every cell is an
/// integer, decimal or "p/q" literal; otherwise the file is read as floats.
/// Throws parse_error with a 1-based row (line) and column.
Dataset load_csv(std::istream& in);
Dataset load_csv_text(std::string_view text);
Dataset load_csv_file(const std::filesystem::path& path);

using PowerSumTable = std::map<ExponentVector, Value, GradedOrder>;

/// s_w = sum_i prod_c X_{i,c}^{w_c} for every requested w.
PowerSumTable power_sums(const Dataset& data, const std::set<ExponentVector, GradedOrder>& needed);

/// Symbol indices occurring in p.
std::set<ExponentVector, GradedOrder> symbols_of(const PowerSumPoly& p);

/// Instantiates n = data.n() and the data's power sums. Exact when the data
/// is exact. Throws domain_error when n is smaller than the estimator order.
Value evaluate_estimator(const PowerSumPoly& p, const Dataset& data);

}  // namespace kstat
