#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kstat {

using Exponent = std::uint32_t;

/// Exponent vector indexing a power-sum, moment or cumulant symbol, e.g.
/// (2, 1) for s_{2,1} = sum_i X_i^2 Y_i.
using ExponentVector = std::vector<Exponent>;

unsigned total_degree(const ExponentVector& w);
bool is_zero_vector(const ExponentVector& w);

ExponentVector unit_vector(unsigned vars, unsigned index);
ExponentVector add_vectors(const ExponentVector& a, const ExponentVector& b);

/// Graded order on exponent vectors: ascending total degree, ties broken in
/// favour of the larger leading component, so (1,0) precedes (0,1).
/// Returns <0, 0, >0.
int graded_compare(const ExponentVector& a, const ExponentVector& b);

struct GradedOrder {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const {
    return graded_compare(a, b) < 0;
  }
};

/// "[2,1]"
std::string to_string(const ExponentVector& w);

/// Parses "[2,1]" (whitespace tolerated). Throws parse_error.
ExponentVector parse_exponent_vector(std::string_view text);

/// Parses "t1;t2;..." with bracketed vectors, e.g. "[1,1];[1,0]".
std::vector<ExponentVector> parse_exponent_vector_list(std::string_view text);

}  // namespace kstat
