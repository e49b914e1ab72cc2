#include "kstat/evaluate.hpp"

#include "kstat/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

namespace kstat {

std::string format_value(const Value& v) {
  if (const auto* q = std::get_if<Rational>(&v)) return q->get_str();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(v));
  return buf;
}

double to_double(const Value& v) {
  if (const auto* q = std::get_if<Rational>(&v)) return q->get_d();
  return std::get<double>(v);
}

Dataset::Dataset(std::vector<std::string> columns, std::vector<std::vector<Rational>> rows)
    : columns_(std::move(columns)), rows_(std::move(rows)) {
  if (columns_.empty()) throw invalid_argument("dataset needs at least one column");
  const auto& r = exact_rows();
  if (r.empty()) throw invalid_argument("dataset needs at least one row");
  for (const auto& row : r) {
    if (row.size() != columns_.size()) throw invalid_argument("dataset rows must all have one value per column");
  }
}

Dataset::Dataset(std::vector<std::string> columns, std::vector<std::vector<double>> rows)
    : columns_(std::move(columns)), rows_(std::move(rows)) {
  if (columns_.empty()) throw invalid_argument("dataset needs at least one column");
  const auto& r = float_rows();
  if (r.empty()) throw invalid_argument("dataset needs at least one row");
  for (const auto& row : r) {
    if (row.size() != columns_.size()) throw invalid_argument("dataset rows must all have one value per column");
  }
}

std::size_t Dataset::n() const noexcept {
  return std::visit([](const auto& rows) { return rows.size(); }, rows_);
}

const std::vector<std::vector<Rational>>& Dataset::exact_rows() const {
  return std::get<std::vector<std::vector<Rational>>>(rows_);
}

const std::vector<std::vector<double>>& Dataset::float_rows() const {
  return std::get<std::vector<std::vector<double>>>(rows_);
}

Dataset Dataset::permuted(const std::vector<std::size_t>& order) const {
  return std::visit(
      [&](const auto& rows) {
        std::remove_cvref_t<decltype(rows)> out;
        out.reserve(order.size());
        for (auto i : order) out.push_back(rows.at(i));
        return Dataset(columns_, std::move(out));
      },
      rows_);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Integer, decimal or p/q literal.
std::optional<Rational> parse_exact(std::string_view cell) {
  std::string_view body = cell;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational q;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    BigInt d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    q = Rational(BigInt(std::string(num), 10), d);
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto whole = body.substr(0, dot);
    const auto frac = body.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      return std::nullopt;
    }
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    const std::string digits = std::string(whole.empty() ? "0" : whole) + std::string(frac);
    q = Rational(BigInt(digits, 10), scale);
  } else {
    if (!all_digits(body)) return std::nullopt;
    q = Rational(BigInt(std::string(body), 10));
  }
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

std::optional<double> parse_float(std::string_view cell) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0;
  const auto* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

Dataset load_csv_text(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    lines.push_back(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw parse_error("empty CSV input: a header row is required", 1, 0);

  std::vector<std::string> columns;
  for (auto name : split(lines[0])) {
    if (name.empty()) throw parse_error("empty column name in header", 1, columns.size() + 1);
    columns.emplace_back(name);
  }
  if (lines.size() == 1) throw parse_error("CSV has a header but no data rows", 2, 0);

  std::vector<std::vector<std::string_view>> cells;
  bool exact = true;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    auto fields = split(lines[r]);
    if (fields.size() != columns.size()) {
      throw parse_error("row has " + std::to_string(fields.size()) + " values but the header has " +
                            std::to_string(columns.size()) + " columns",
                        r + 1, std::min(fields.size(), columns.size()) + 1);
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (parse_exact(fields[c])) continue;
      if (parse_float(fields[c])) {
        exact = false;
        continue;
      }
      throw parse_error("non-numeric value \"" + std::string(fields[c]) + "\"", r + 1, c + 1);
    }
    cells.push_back(std::move(fields));
  }

  if (exact) {
    std::vector<std::vector<Rational>> rows;
    for (const auto& fields : cells) {
      auto& row = rows.emplace_back();
      for (auto f : fields) row.push_back(*parse_exact(f));
    }
    return Dataset(std::move(columns), std::move(rows));
  }
  std::vector<std::vector<double>> rows;
  for (const auto& fields : cells) {
    auto& row = rows.emplace_back();
    for (auto f : fields) {
      if (auto q = parse_exact(f)) {
        row.push_back(q->get_d());
      } else {
        row.push_back(*parse_float(f));
      }
    }
  }
  return Dataset(std::move(columns), std::move(rows));
}

Dataset load_csv(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_csv_text(text);
}

Dataset load_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open data file " + path.string());
  return load_csv(in);
}

namespace {

template <class Scalar>
Scalar power(const Scalar& x, unsigned e) {
  Scalar acc(1);
  for (unsigned i = 0; i < e; ++i) acc *= x;
  return acc;
}

template <class Scalar>
Scalar power_sum(const std::vector<std::vector<Scalar>>& rows, const ExponentVector& w) {
  Scalar total(0);
  for (const auto& row : rows) {
    Scalar term(1);
    for (std::size_t c = 0; c < w.size(); ++c) {
      if (w[c] > 0) term *= power(row[c], w[c]);
    }
    total += term;
  }
  return total;
}

}  // namespace

PowerSumTable power_sums(const Dataset& data, const std::set<ExponentVector, GradedOrder>& needed) {
  PowerSumTable out;
  for (const auto& w : needed) {
    if (w.size() != data.vars()) {
      throw invalid_argument("power sum " + to_string(w) + " does not match a dataset with " +
                             std::to_string(data.vars()) + " columns");
    }
    if (data.exact()) {
      out.emplace(w, Value(power_sum(data.exact_rows(), w)));
    } else {
      out.emplace(w, Value(power_sum(data.float_rows(), w)));
    }
  }
  return out;
}

std::set<ExponentVector, GradedOrder> symbols_of(const PowerSumPoly& p) {
  std::set<ExponentVector, GradedOrder> out;
  for (const auto& [m, c] : p.terms()) {
    for (const auto& f : m.factors()) out.insert(f.first);
  }
  return out;
}

Value evaluate_estimator(const PowerSumPoly& p, const Dataset& data) {
  if (p.vars() != data.vars()) {
    throw invalid_argument("estimator over " + std::to_string(p.vars()) + " variables applied to data with " +
                           std::to_string(data.vars()) + " columns");
  }
  const unsigned order = p.max_weight();
  const auto n = static_cast<long>(data.n());
  if (n < static_cast<long>(order)) {
    throw domain_error("sample size n = " + std::to_string(n) + " is smaller than the estimator order " +
                       std::to_string(order));
  }
  const InstantiatedPoly inst = substitute_n(p, n);
  const PowerSumTable sums = power_sums(data, symbols_of(p));
  if (data.exact()) {
    Rational total = 0;
    for (const auto& [m, c] : inst.terms) {
      Rational term = c;
      for (const auto& [w, e] : m.factors()) term *= power(std::get<Rational>(sums.at(w)), e);
      total += term;
    }
    return total;
  }
  double total = 0;
  for (const auto& [m, c] : inst.terms) {
    double term = c.get_d();
    for (const auto& [w, e] : m.factors()) term *= std::pow(std::get<double>(sums.at(w)), static_cast<double>(e));
    total += term;
  }
  return total;
}

}  // namespace kstat
