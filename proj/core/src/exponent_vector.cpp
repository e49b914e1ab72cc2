#include "kstat/exponent_vector.hpp"

#include "kstat/errors.hpp"

#include <cctype>
#include <charconv>
#include <numeric>

namespace kstat {

unsigned total_degree(const ExponentVector& w) {
  return std::accumulate(w.begin(), w.end(), 0u);
}

bool is_zero_vector(const ExponentVector& w) {
  for (auto e : w) {
    if (e != 0) return false;
  }
  return true;
}

ExponentVector unit_vector(unsigned vars, unsigned index) {
  if (index >= vars) throw invalid_argument("unit_vector: index out of range");
  ExponentVector w(vars, 0);
  w[index] = 1;
  return w;
}

ExponentVector add_vectors(const ExponentVector& a, const ExponentVector& b) {
  if (a.size() != b.size()) throw invalid_argument("add_vectors: length mismatch");
  ExponentVector out(a);
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

int graded_compare(const ExponentVector& a, const ExponentVector& b) {
  const unsigned da = total_degree(a);
  const unsigned db = total_degree(b);
  if (da != db) return da < db ? -1 : 1;
  const std::size_t len = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < len; ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

std::string to_string(const ExponentVector& w) {
  std::string out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(w[i]);
  }
  out += ']';
  return out;
}

namespace {

void skip_space(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

ExponentVector parse_vector_at(std::string_view text, std::size_t& pos) {
  skip_space(text, pos);
  if (pos >= text.size() || text[pos] != '[') {
    throw parse_error("expected '[' in exponent vector \"" + std::string(text) + "\"", 0, pos + 1);
  }
  ++pos;
  ExponentVector w;
  while (true) {
    skip_space(text, pos);
    Exponent value = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first) {
      throw parse_error("expected a non-negative integer in \"" + std::string(text) + "\"", 0, pos + 1);
    }
    pos += static_cast<std::size_t>(ptr - first);
    w.push_back(value);
    skip_space(text, pos);
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < text.size() && text[pos] == ']') {
      ++pos;
      return w;
    }
    throw parse_error("expected ',' or ']' in \"" + std::string(text) + "\"", 0, pos + 1);
  }
}

}  // namespace

ExponentVector parse_exponent_vector(std::string_view text) {
  std::size_t pos = 0;
  ExponentVector w = parse_vector_at(text, pos);
  skip_space(text, pos);
  if (pos != text.size()) {
    throw parse_error("trailing characters after exponent vector \"" + std::string(text) + "\"", 0, pos + 1);
  }
  return w;
}

std::vector<ExponentVector> parse_exponent_vector_list(std::string_view text) {
  std::vector<ExponentVector> out;
  std::size_t pos = 0;
  while (true) {
    out.push_back(parse_vector_at(text, pos));
    skip_space(text, pos);
    if (pos == text.size()) return out;
    if (text[pos] != ';') {
      throw parse_error("expected ';' between vectors in \"" + std::string(text) + "\"", 0, pos + 1);
    }
    ++pos;
  }
}

}  // namespace kstat
