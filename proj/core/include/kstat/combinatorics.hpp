#pragma once

#include "kstat/exponent_vector.hpp"
#include "kstat/npoly.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace kstat {

/// A partition lambda of an integer: parts in weakly decreasing order.
class IntegerPartition {
 public:
  /// Throws invalid_argument unless parts are positive and weakly decreasing.
  explicit IntegerPartition(std::vector<unsigned> parts);

  const std::vector<unsigned>& parts() const noexcept { return parts_; }
  unsigned weight() const noexcept { return weight_; }
  /// Number of parts (nu_lambda).
  unsigned length() const noexcept { return static_cast<unsigned>(parts_.size()); }
  /// (part j, count r_j) pairs in ascending part order.
  std::vector<std::pair<unsigned, unsigned>> multiplicities() const;
  /// r_j
  unsigned multiplicity(unsigned part) const;

  friend bool operator==(const IntegerPartition&, const IntegerPartition&) = default;

 private:
  std::vector<unsigned> parts_;
  unsigned weight_ = 0;
};

/// All partitions of i in reverse-lexicographic order: (i), (i-1,1), ..., (1^i).
/// Throws invalid_argument for i == 0.
std::vector<IntegerPartition> integer_partitions(unsigned i);

BigInt factorial(unsigned m);

/// Number of set partitions with block-size profile lambda:
/// i! / prod_j (r_j! (j!)^{r_j}).
BigInt d_lambda(const IntegerPartition& lambda);

/// Stirling numbers of the second kind S(m, j).
BigInt stirling2(unsigned m, unsigned j);
/// Row S(m, 0..m). Rows are computed once and cached (thread-safe).
std::vector<BigInt> stirling2_row(unsigned m);

BigInt bell(unsigned m);

/// (n)_m as a polynomial in n; requires m >= 1.
NPoly falling_factorial(unsigned m);

/// (-1)^{m-1} (m-1)!, the m-th cumulant coefficient of a singleton; requires m >= 1.
BigInt cumulant_coefficient(unsigned m);

struct EnumerationLimits {
  static constexpr unsigned kDefaultMaxGroundSize = 20;
  /// Largest k for which set partitions of [k] may be enumerated.
  unsigned max_ground_size = kDefaultMaxGroundSize;
  /// Lift the limit (up to the hard cap of 255 used by the block encoding).
  bool allow_large = false;

  /// Throws resource_error when enumerating [k] is refused.
  void check(unsigned k) const;
};

/// A set partition of [k] as a restricted growth sequence: rgs[p] is the
/// block of element p (0-based); rgs[0] == 0 and each entry exceeds the
/// running maximum by at most one.
class SetPartition {
 public:
  /// Throws invalid_argument if `rgs` is not a restricted growth sequence.
  explicit SetPartition(std::vector<std::uint8_t> rgs);

  unsigned ground_size() const noexcept { return static_cast<unsigned>(rgs_.size()); }
  unsigned block_count() const noexcept { return blocks_; }
  const std::vector<std::uint8_t>& rgs() const noexcept { return rgs_; }
  /// Blocks as sorted 0-based element lists, ordered by smallest element.
  std::vector<std::vector<unsigned>> blocks() const;

  /// Every block of *this lies inside a block of `coarser`.
  bool refines(const SetPartition& coarser) const;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;

 private:
  std::vector<std::uint8_t> rgs_;
  unsigned blocks_ = 0;
};

/// Lazy single-consumer stream over the set partitions of [k] in
/// lexicographic restricted-growth order.
class SetPartitionStream {
 public:
  /// Throws invalid_argument for k == 0 and resource_error beyond the limit.
  explicit SetPartitionStream(unsigned k, EnumerationLimits limits = {});

  std::optional<SetPartition> next();

  /// In-place advance; false once exhausted. `rgs()` is valid after a true return.
  bool advance();
  const std::vector<std::uint8_t>& rgs() const noexcept { return rgs_; }
  unsigned block_count() const noexcept { return prefix_max_.empty() ? 0 : prefix_max_.back() + 1u; }

 private:
  std::vector<std::uint8_t> rgs_;
  std::vector<std::uint8_t> prefix_max_;
  bool started_ = false;
  bool done_ = false;
};

/// Multiset of non-zero exponent vectors. Support entries are kept in
/// graded order (this fixes the canonical s-map).
class Multiset {
 public:
  using Entry = std::pair<ExponentVector, unsigned>;

  /// Throws invalid_argument on zero or wrongly sized vectors, zero
  /// multiplicities or repeated support entries.
  Multiset(unsigned vars, std::vector<Entry> entries);

  /// Counts repeated elements, e.g. {(1),(1),(2)} -> {(1)^2, (2)}.
  static Multiset from_elements(unsigned vars, const std::vector<ExponentVector>& elements);
  /// P_lambda = {(1)^{r_1}, (2)^{r_2}, ...}
  static Multiset of_partition(const IntegerPartition& lambda);
  /// {e_1^{t_1}, ..., e_v^{t_v}} for a cumulant index vector t.
  static Multiset of_index_vector(const ExponentVector& t);

  unsigned vars() const noexcept { return vars_; }
  const std::vector<Entry>& support() const noexcept { return support_; }
  unsigned length() const noexcept { return length_; }

  /// Canonical s-map: element p of [length] -> support index.
  std::vector<unsigned> element_map() const;

  friend bool operator==(const Multiset&, const Multiset&) = default;

 private:
  unsigned vars_;
  std::vector<Entry> support_;
  unsigned length_ = 0;
};

/// One distinct block M_i of a subdivision with its block multiplicity g(M_i).
struct SubdivisionBlock {
  /// (support element, f_i) pairs in graded order of the element.
  std::vector<Multiset::Entry> elements;
  unsigned multiplicity = 1;

  /// |M_i|
  unsigned length() const;
  /// Sum of the block's elements with multiplicity, i.e. the symbol index.
  ExponentVector degree_sum(unsigned vars) const;

  friend bool operator==(const SubdivisionBlock&, const SubdivisionBlock&) = default;
};

/// A subdivision S of a multiset. Blocks are in canonical order: descending
/// length, then ascending serialized (element, multiplicity) list; equal
/// blocks are merged into one entry with multiplicity g.
class Subdivision {
 public:
  Subdivision(Multiset parent, std::vector<SubdivisionBlock> blocks, BigInt weight);

  const Multiset& parent() const noexcept { return parent_; }
  const std::vector<SubdivisionBlock>& blocks() const noexcept { return blocks_; }
  /// |S| = sum of block multiplicities.
  unsigned size() const;
  /// Number of set partitions pi with S_pi equal to this subdivision.
  const BigInt& weight() const noexcept { return weight_; }

  /// Equality of the subdivision itself (weights are not compared).
  bool same_blocks(const Subdivision& o) const { return blocks_ == o.blocks_; }

 private:
  Multiset parent_;
  std::vector<SubdivisionBlock> blocks_;
  BigInt weight_;
};

/// S_pi: the subdivision induced by pi through the canonical s-map (weight 1).
/// Throws invalid_argument unless pi.ground_size() == M.length().
Subdivision subdivision_of(const SetPartition& pi, const Multiset& M);

/// Every distinct subdivision of M with its weight, found by enumerating all
/// set partitions of [|M|] and merging equal images. Ordered by |S|, then by
/// blocks. Throws resource_error beyond the enumeration limit.
std::vector<Subdivision> subdivisions(const Multiset& M, EnumerationLimits limits = {});

/// Canonical block ordering used inside Subdivision (strict weak order).
bool block_precedes(const SubdivisionBlock& a, const SubdivisionBlock& b);

}  // namespace kstat
