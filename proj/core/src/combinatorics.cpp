#include "kstat/combinatorics.hpp"

#include "kstat/errors.hpp"

#include <algorithm>
#include <cstring>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <unordered_map>

namespace kstat {

IntegerPartition::IntegerPartition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw invalid_argument("integer partition with no parts");
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] == 0) throw invalid_argument("integer partition with a zero part");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw invalid_argument("integer partition parts must be weakly decreasing");
    weight_ += parts_[i];
  }
}

std::vector<std::pair<unsigned, unsigned>> IntegerPartition::multiplicities() const {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) {
    if (!out.empty() && out.back().first == *it) {
      ++out.back().second;
    } else {
      out.emplace_back(*it, 1u);
    }
  }
  return out;
}

unsigned IntegerPartition::multiplicity(unsigned part) const {
  return static_cast<unsigned>(std::count(parts_.begin(), parts_.end(), part));
}

namespace {

void partitions_into(unsigned remaining, unsigned max_part, std::vector<unsigned>& prefix,
                     std::vector<IntegerPartition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (unsigned p = std::min(remaining, max_part); p >= 1; --p) {
    prefix.push_back(p);
    partitions_into(remaining - p, p, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<IntegerPartition> integer_partitions(unsigned i) {
  if (i == 0) throw invalid_argument("integer_partitions: i must be positive");
  std::vector<IntegerPartition> out;
  std::vector<unsigned> prefix;
  partitions_into(i, i, prefix, out);
  return out;
}

BigInt factorial(unsigned m) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), m);
  return f;
}

BigInt d_lambda(const IntegerPartition& lambda) {
  BigInt den = 1;
  for (auto [part, count] : lambda.multiplicities()) {
    den *= factorial(count);
    BigInt pf;
    mpz_pow_ui(pf.get_mpz_t(), factorial(part).get_mpz_t(), count);
    den *= pf;
  }
  return factorial(lambda.weight()) / den;
}

std::vector<BigInt> stirling2_row(unsigned m) {
  static std::mutex mutex;
  static std::deque<std::vector<BigInt>> rows{{BigInt(1)}};
  std::lock_guard lock(mutex);
  while (rows.size() <= m) {
    const auto& prev = rows.back();
    const unsigned r = static_cast<unsigned>(rows.size());
    std::vector<BigInt> row(r + 1, BigInt(0));
    for (unsigned j = 1; j <= r; ++j) {
      BigInt v = j < prev.size() ? BigInt(prev[j] * j) : BigInt(0);
      v += prev[j - 1];
      row[j] = v;
    }
    rows.push_back(std::move(row));
  }
  return rows[m];
}

BigInt stirling2(unsigned m, unsigned j) {
  if (j > m) return 0;
  return stirling2_row(m)[j];
}

BigInt bell(unsigned m) {
  const auto row = stirling2_row(m);
  return std::accumulate(row.begin(), row.end(), BigInt(0));
}

NPoly falling_factorial(unsigned m) {
  if (m == 0) throw invalid_argument("falling_factorial: m must be positive");
  return falling_factorial_poly(m);
}

BigInt cumulant_coefficient(unsigned m) {
  if (m == 0) throw invalid_argument("cumulant_coefficient: m must be positive");
  BigInt f = factorial(m - 1);
  return (m % 2 == 1) ? f : BigInt(-f);
}

void EnumerationLimits::check(unsigned k) const {
  constexpr unsigned kHardCap = 255;
  if (k > kHardCap) {
    throw resource_error("set partitions of [" + std::to_string(k) + "] exceed the hard cap of " +
                         std::to_string(kHardCap));
  }
  if (!allow_large && k > max_ground_size) {
    throw resource_error("refusing to enumerate the Bell(" + std::to_string(k) +
                         ") set partitions of a " + std::to_string(k) + "-element set (limit " +
                         std::to_string(max_ground_size) + ")");
  }
}

SetPartition::SetPartition(std::vector<std::uint8_t> rgs) : rgs_(std::move(rgs)) {
  if (rgs_.empty()) throw invalid_argument("set partition of an empty set");
  int running_max = -1;
  for (auto b : rgs_) {
    if (static_cast<int>(b) > running_max + 1) throw invalid_argument("not a restricted growth sequence");
    running_max = std::max(running_max, static_cast<int>(b));
  }
  blocks_ = static_cast<unsigned>(running_max + 1);
}

std::vector<std::vector<unsigned>> SetPartition::blocks() const {
  std::vector<std::vector<unsigned>> out(blocks_);
  for (unsigned p = 0; p < rgs_.size(); ++p) out[rgs_[p]].push_back(p);
  return out;
}

bool SetPartition::refines(const SetPartition& coarser) const {
  if (coarser.ground_size() != ground_size()) throw invalid_argument("refines: ground sizes differ");
  std::vector<int> image(blocks_, -1);
  for (unsigned p = 0; p < rgs_.size(); ++p) {
    int& target = image[rgs_[p]];
    if (target < 0) {
      target = coarser.rgs_[p];
    } else if (target != coarser.rgs_[p]) {
      return false;
    }
  }
  return true;
}

SetPartitionStream::SetPartitionStream(unsigned k, EnumerationLimits limits) {
  if (k == 0) throw invalid_argument("set partitions: k must be positive");
  limits.check(k);
  rgs_.assign(k, 0);
  prefix_max_.assign(k, 0);
}

bool SetPartitionStream::advance() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    return true;
  }
  const std::size_t k = rgs_.size();
  for (std::size_t i = k; i-- > 1;) {
    if (rgs_[i] <= prefix_max_[i - 1]) {
      ++rgs_[i];
      prefix_max_[i] = std::max(prefix_max_[i - 1], rgs_[i]);
      for (std::size_t j = i + 1; j < k; ++j) {
        rgs_[j] = 0;
        prefix_max_[j] = prefix_max_[i];
      }
      return true;
    }
  }
  done_ = true;
  return false;
}

std::optional<SetPartition> SetPartitionStream::next() {
  if (!advance()) return std::nullopt;
  return SetPartition(rgs_);
}

Multiset::Multiset(unsigned vars, std::vector<Entry> entries) : vars_(vars), support_(std::move(entries)) {
  if (vars_ == 0) throw invalid_argument("multiset over zero variables");
  for (const auto& [w, f] : support_) {
    if (w.size() != vars_) throw invalid_argument("multiset element " + to_string(w) + " has the wrong length");
    if (is_zero_vector(w)) throw invalid_argument("multiset element must be a non-zero vector");
    if (f == 0) throw invalid_argument("multiset multiplicities must be positive");
    length_ += f;
  }
  std::sort(support_.begin(), support_.end(),
            [](const Entry& a, const Entry& b) { return graded_compare(a.first, b.first) < 0; });
  for (std::size_t i = 1; i < support_.size(); ++i) {
    if (support_[i].first == support_[i - 1].first) {
      throw invalid_argument("multiset support entries must be distinct: " + to_string(support_[i].first));
    }
  }
}

Multiset Multiset::from_elements(unsigned vars, const std::vector<ExponentVector>& elements) {
  std::map<ExponentVector, unsigned, GradedOrder> counts;
  for (const auto& w : elements) ++counts[w];
  std::vector<Entry> entries(counts.begin(), counts.end());
  return Multiset(vars, std::move(entries));
}

Multiset Multiset::of_partition(const IntegerPartition& lambda) {
  std::vector<Entry> entries;
  for (auto [part, count] : lambda.multiplicities()) entries.emplace_back(ExponentVector{part}, count);
  return Multiset(1, std::move(entries));
}

Multiset Multiset::of_index_vector(const ExponentVector& t) {
  if (t.empty() || is_zero_vector(t)) throw invalid_argument("index vector must be non-zero");
  const auto vars = static_cast<unsigned>(t.size());
  std::vector<Entry> entries;
  for (unsigned j = 0; j < vars; ++j) {
    if (t[j] > 0) entries.emplace_back(unit_vector(vars, j), t[j]);
  }
  return Multiset(vars, std::move(entries));
}

std::vector<unsigned> Multiset::element_map() const {
  std::vector<unsigned> out;
  out.reserve(length_);
  for (unsigned s = 0; s < support_.size(); ++s) out.insert(out.end(), support_[s].second, s);
  return out;
}

unsigned SubdivisionBlock::length() const {
  unsigned len = 0;
  for (const auto& e : elements) len += e.second;
  return len;
}

ExponentVector SubdivisionBlock::degree_sum(unsigned vars) const {
  ExponentVector w(vars, 0);
  for (const auto& [mu, f] : elements) {
    for (unsigned c = 0; c < vars; ++c) w[c] += mu[c] * f;
  }
  return w;
}

bool block_precedes(const SubdivisionBlock& a, const SubdivisionBlock& b) {
  const unsigned la = a.length();
  const unsigned lb = b.length();
  if (la != lb) return la > lb;
  const std::size_t len = std::min(a.elements.size(), b.elements.size());
  for (std::size_t i = 0; i < len; ++i) {
    const int c = graded_compare(a.elements[i].first, b.elements[i].first);
    if (c != 0) return c < 0;
    if (a.elements[i].second != b.elements[i].second) return a.elements[i].second < b.elements[i].second;
  }
  return a.elements.size() < b.elements.size();
}

Subdivision::Subdivision(Multiset parent, std::vector<SubdivisionBlock> blocks, BigInt weight)
    : parent_(std::move(parent)), blocks_(std::move(blocks)), weight_(std::move(weight)) {
  std::sort(blocks_.begin(), blocks_.end(), block_precedes);
  // merge equal neighbours into block multiplicities
  std::vector<SubdivisionBlock> merged;
  for (auto& b : blocks_) {
    if (!merged.empty() && merged.back().elements == b.elements) {
      merged.back().multiplicity += b.multiplicity;
    } else {
      merged.push_back(std::move(b));
    }
  }
  blocks_ = std::move(merged);
}

unsigned Subdivision::size() const {
  unsigned s = 0;
  for (const auto& b : blocks_) s += b.multiplicity;
  return s;
}

namespace {

// Block count rows over support indices -> SubdivisionBlocks.
std::vector<SubdivisionBlock> blocks_from_counts(const Multiset& M, const std::uint8_t* cells, unsigned block_count) {
  const std::size_t width = M.support().size();
  std::vector<SubdivisionBlock> blocks;
  blocks.reserve(block_count);
  for (unsigned b = 0; b < block_count; ++b) {
    SubdivisionBlock block;
    for (std::size_t s = 0; s < width; ++s) {
      const unsigned f = cells[b * width + s];
      if (f > 0) block.elements.emplace_back(M.support()[s].first, f);
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

bool subdivision_precedes(const Subdivision& a, const Subdivision& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  const auto& x = a.blocks();
  const auto& y = b.blocks();
  const std::size_t len = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < len; ++i) {
    if (block_precedes(x[i], y[i])) return true;
    if (block_precedes(y[i], x[i])) return false;
    if (x[i].multiplicity != y[i].multiplicity) return x[i].multiplicity > y[i].multiplicity;
  }
  return x.size() < y.size();
}

}  // namespace

Subdivision subdivision_of(const SetPartition& pi, const Multiset& M) {
  if (pi.ground_size() != M.length()) {
    throw invalid_argument("subdivision_of: partition of [" + std::to_string(pi.ground_size()) +
                           "] does not match a multiset of length " + std::to_string(M.length()));
  }
  const auto smap = M.element_map();
  const std::size_t width = M.support().size();
  std::vector<std::uint8_t> cells(pi.block_count() * width, 0);
  for (unsigned p = 0; p < pi.ground_size(); ++p) ++cells[pi.rgs()[p] * width + smap[p]];
  return Subdivision(M, blocks_from_counts(M, cells.data(), pi.block_count()), 1);
}

std::vector<Subdivision> subdivisions(const Multiset& M, EnumerationLimits limits) {
  const unsigned k = M.length();
  SetPartitionStream stream(k, limits);
  const auto smap = M.element_map();
  const std::size_t width = M.support().size();

  std::unordered_map<std::string, std::uint64_t> tally;
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(k) * width);
  std::vector<unsigned> order(k);
  std::string key;
  const auto& rgs = stream.rgs();
  while (stream.advance()) {
    const unsigned blocks = stream.block_count();
    std::fill(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(blocks * width), 0);
    for (unsigned p = 0; p < k; ++p) ++cells[rgs[p] * width + smap[p]];
    std::iota(order.begin(), order.begin() + blocks, 0u);
    std::sort(order.begin(), order.begin() + blocks, [&](unsigned a, unsigned b) {
      return std::memcmp(&cells[a * width], &cells[b * width], width) > 0;
    });
    key.clear();
    for (unsigned i = 0; i < blocks; ++i) {
      key.append(reinterpret_cast<const char*>(&cells[order[i] * width]), width);
    }
    ++tally[key];
  }

  std::vector<Subdivision> out;
  out.reserve(tally.size());
  for (const auto& [encoded, count] : tally) {
    const auto* bytes = reinterpret_cast<const std::uint8_t*>(encoded.data());
    const auto block_count = static_cast<unsigned>(encoded.size() / width);
    BigInt weight;
    mpz_import(weight.get_mpz_t(), 1, 1, sizeof(count), 0, 0, &count);
    out.emplace_back(M, blocks_from_counts(M, bytes, block_count), std::move(weight));
  }
  std::sort(out.begin(), out.end(), subdivision_precedes);
  return out;
}

}  // namespace kstat
