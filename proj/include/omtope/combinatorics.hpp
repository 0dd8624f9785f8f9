#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "omtope/error.hpp"

namespace omtope {

/// Subset of a ground set of at most 64 elements; bit i is element i (0-based).
using Mask = std::uint64_t;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kMaxElements = 64;

constexpr Mask full_mask(int n) {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

constexpr Mask bit(int e) { return Mask{1} << e; }

constexpr int popcount(Mask m) { return std::popcount(m); }

namespace detail {

struct BinomialTable {
  std::array<std::array<std::uint64_t, kMaxElements + 1>, kMaxElements + 1> values{};

  constexpr BinomialTable() {
    for (int n = 0; n <= kMaxElements; ++n) {
      values[n][0] = 1;
      for (int k = 1; k <= n; ++k) values[n][k] = values[n - 1][k - 1] + (k < n ? values[n - 1][k] : 0);
    }
  }
};

inline constexpr BinomialTable kBinomials{};

}  // namespace detail

/// C(n, k) for 0 <= n <= 64; zero outside the triangle. C(64, 32) fits in 64 bits.
constexpr std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (n > kMaxElements) throw Error(ErrorKind::too_large, "binomial table holds n <= 64");
  return detail::kBinomials.values[n][k];
}

/// Exact C(n, k) for any n (negative or out-of-range k gives 0).
inline BigInt big_binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (long long i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

/// Rank of a k-subset in colexicographic order (sum of C(c_i, i+1) over sorted c_i).
constexpr std::uint64_t colex_rank(Mask subset) {
  std::uint64_t rank = 0;
  int i = 0;
  while (subset) {
    const int c = std::countr_zero(subset);
    rank += binomial(c, i + 1);
    subset &= subset - 1;
    ++i;
  }
  return rank;
}

/// Mirrors a subset of [n] through e -> n-1-e.
constexpr Mask mirror(Mask subset, int n) {
  Mask out = 0;
  while (subset) {
    const int c = std::countr_zero(subset);
    out |= bit(n - 1 - c);
    subset &= subset - 1;
  }
  return out;
}

/// Rank of a k-subset of [n] in lexicographic order of sorted tuples.
constexpr std::uint64_t lex_rank(Mask subset, int n) {
  const int k = popcount(subset);
  return binomial(n, k) - 1 - colex_rank(mirror(subset, n));
}

/// All k-subsets of [n] in lexicographic order of their sorted tuples.
inline std::vector<Mask> subsets_lex(int n, int k) {
  std::vector<Mask> out;
  if (k < 0 || k > n) return out;
  out.reserve(binomial(n, k));
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    Mask m = 0;
    for (int e : idx) m |= bit(e);
    out.push_back(m);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

/// Elements of a mask in increasing order.
inline std::vector<int> elements_of(Mask m) {
  std::vector<int> out;
  out.reserve(popcount(m));
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

/// Sign (+1 / -1) of the permutation sorting `seq`, by inversion count. Entries must be distinct.
template <typename Range>
int permutation_sign(const Range& seq) {
  int inversions = 0;
  const auto n = std::size(seq);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (seq[i] > seq[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace omtope
