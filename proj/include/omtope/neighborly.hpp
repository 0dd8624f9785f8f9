#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "omtope/circuits.hpp"
#include "omtope/combinatorics.hpp"
#include "omtope/error.hpp"
#include "omtope/parallel.hpp"
#include "omtope/sign_vector.hpp"

namespace omtope {

/// Largest admissible neighborliness level, floor((r-1)/2).
constexpr int max_level(int r) { return r >= 1 ? (r - 1) / 2 : -1; }

/// Circuits laid out as parallel mask arrays for the enumeration hot loop.
/// Topes are passed as the mask of their negative coordinates.
class OrthogonalityKernel {
 public:
  explicit OrthogonalityKernel(const CircuitSet& cs) : n_(cs.n), r_(cs.r) {
    require_circuits(cs);
    plus_.reserve(cs.members.size());
    minus_.reserve(cs.members.size());
    for (const auto& x : cs.members) {
      require(popcount(x.support()) == cs.r + 1, ErrorKind::domain, "circuit support size differs from r+1");
      plus_.push_back(x.plus());
      minus_.push_back(x.minus());
    }
  }

  int size() const { return n_; }
  int rank() const { return r_; }

  /// min over circuits of X ⊥ T; stops early once the minimum hits 0.
  int ort(Mask negative) const {
    const int support = r_ + 1;
    int best = support;
    for (std::size_t i = 0; i < plus_.size(); ++i) {
      const int agree = popcount((plus_[i] & ~negative) | (minus_[i] & negative));
      const int degree = std::min(agree, support - agree);
      if (degree < best) {
        best = degree;
        if (best == 0) break;
      }
    }
    return best;
  }

  /// ort(T) >= level, aborting at the first circuit below it.
  bool at_least(Mask negative, int level) const {
    const int support = r_ + 1;
    for (std::size_t i = 0; i < plus_.size(); ++i) {
      const int agree = popcount((plus_[i] & ~negative) | (minus_[i] & negative));
      if (agree < level || support - agree < level) return false;
    }
    return true;
  }

  bool is_tope(Mask negative) const { return at_least(negative, 1); }

 private:
  int n_;
  int r_;
  std::vector<Mask> plus_;
  std::vector<Mask> minus_;
};

/// Entry k counts topes with ort exactly k+1, i.e. exactly-k-neighborly reorientations.
struct OVector {
  int r = 0;
  int n = 0;
  std::vector<std::uint64_t> entries;

  std::uint64_t total() const { return std::accumulate(entries.begin(), entries.end(), std::uint64_t{0}); }

  /// Tail sum: the number of at-least-k-neighborly reorientations.
  std::uint64_t m(int k) const {
    require(k >= 0 && k < static_cast<int>(entries.size()), ErrorKind::domain,
            "level " + std::to_string(k) + " outside 0.." + std::to_string(max_level(r)));
    return std::accumulate(entries.begin() + k, entries.end(), std::uint64_t{0});
  }

  std::vector<std::uint64_t> m_values() const {
    std::vector<std::uint64_t> out(entries.size());
    std::uint64_t run = 0;
    for (std::size_t i = entries.size(); i-- > 0;) out[i] = (run += entries[i]);
    return out;
  }

  friend bool operator==(const OVector&, const OVector&) = default;
};

inline void require_full(const SignVector& t, int n) {
  require(t.size() == n, ErrorKind::dimension, "sign vector length differs from ground-set size");
  require(t.is_full(), ErrorKind::not_a_tope, "sign vector has zero entries");
}

inline int ort(const OrthogonalityKernel& kernel, const SignVector& t) {
  require_full(t, kernel.size());
  return kernel.ort(t.minus());
}

inline int ort(const CircuitSet& cs, const SignVector& t) { return ort(OrthogonalityKernel(cs), t); }

/// Enumeration limit; 2^(n-1) candidates are scanned.
inline constexpr int kMaxEnumerationElements = 40;

inline void require_enumerable(int n) {
  require(n <= kMaxEnumerationElements, ErrorKind::too_large,
          "tope enumeration limited to " + std::to_string(kMaxEnumerationElements) + " elements");
}

/// Calls visit(negative_mask, ort) for every tope whose first coordinate is +.
/// The antipode of each visited tope is the remaining half.
template <typename Visit>
void for_each_half_tope(const OrthogonalityKernel& kernel, Visit&& visit) {
  require_enumerable(kernel.size());
  const std::uint64_t half = std::uint64_t{1} << (kernel.size() - 1);
  for (std::uint64_t i = 0; i < half; ++i) {
    const Mask negative = i << 1;
    const int o = kernel.ort(negative);
    if (o > 0) visit(negative, o);
  }
}

/// All topes, in enumeration order (each tope followed by its negative).
inline std::vector<SignVector> enumerate_topes(const CircuitSet& cs) {
  const OrthogonalityKernel kernel(cs);
  std::vector<SignVector> out;
  for_each_half_tope(kernel, [&](Mask negative, int) {
    const auto t = SignVector::tope(cs.n, negative);
    out.push_back(t);
    out.push_back(-t);
  });
  return out;
}

inline std::uint64_t count_topes(const CircuitSet& cs, unsigned threads = 1) {
  const OrthogonalityKernel kernel(cs);
  require_enumerable(cs.n);
  const std::uint64_t half = std::uint64_t{1} << (cs.n - 1);
  return 2 * parallel_reduce(
                 std::uint64_t{0}, half, threads, std::uint64_t{0},
                 [&](std::uint64_t lo, std::uint64_t hi) {
                   std::uint64_t c = 0;
                   for (std::uint64_t i = lo; i < hi; ++i) c += kernel.is_tope(i << 1);
                   return c;
                 },
                 std::plus<>());
}

inline OVector o_vector(const CircuitSet& cs, unsigned threads = 1) {
  const OrthogonalityKernel kernel(cs);
  require_enumerable(cs.n);
  const std::size_t levels = static_cast<std::size_t>(max_level(cs.r) + 1);
  const std::uint64_t half = std::uint64_t{1} << (cs.n - 1);
  using Counts = std::vector<std::uint64_t>;
  auto counts = parallel_reduce(
      std::uint64_t{0}, half, threads, Counts(levels, 0),
      [&](std::uint64_t lo, std::uint64_t hi) {
        Counts c(levels, 0);
        for (std::uint64_t i = lo; i < hi; ++i) {
          const int o = kernel.ort(i << 1);
          if (o > 0) c[o - 1] += 2;
        }
        return c;
      },
      [](Counts a, const Counts& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
      });
  return OVector{cs.r, cs.n, std::move(counts)};
}

inline std::uint64_t m_value(const CircuitSet& cs, int k, unsigned threads = 1) {
  require(k >= 0 && k <= max_level(cs.r), ErrorKind::domain,
          "level " + std::to_string(k) + " outside 0.." + std::to_string(max_level(cs.r)));
  return o_vector(cs, threads).m(k);
}

/// Every sign vector within Hamming distance k of T is a tope.
inline bool ball_k_neighborly(const OrthogonalityKernel& kernel, const SignVector& t, int k) {
  require_full(t, kernel.size());
  require(k >= 0 && k <= max_level(kernel.rank()), ErrorKind::domain, "level outside 0..floor((r-1)/2)");
  require(kernel.is_tope(t.minus()), ErrorKind::domain, "center of the ball is not a tope");
  const int n = kernel.size();
  for (int size = 1; size <= k; ++size) {
    for (Mask flip : subsets_lex(n, size))
      if (!kernel.is_tope(t.minus() ^ flip)) return false;
  }
  return true;
}

inline bool ball_k_neighborly(const CircuitSet& cs, const SignVector& t, int k) {
  return ball_k_neighborly(OrthogonalityKernel(cs), t, k);
}

/// Tope graphs are exported for inspection only.
inline constexpr int kMaxTopeGraphElements = 16;

using TopeEdge = std::pair<SignVector, SignVector>;

/// Pairs of topes at Hamming distance one, each unordered pair listed once
/// with the lexicographically smaller negative mask first.
inline std::vector<TopeEdge> tope_graph_edges(const CircuitSet& cs) {
  require(cs.n <= kMaxTopeGraphElements, ErrorKind::too_large,
          "tope graph export limited to " + std::to_string(kMaxTopeGraphElements) + " elements");
  const OrthogonalityKernel kernel(cs);
  std::vector<TopeEdge> edges;
  const std::uint64_t all = std::uint64_t{1} << cs.n;
  for (std::uint64_t neg = 0; neg < all; ++neg) {
    if (!kernel.is_tope(neg)) continue;
    for (int e = 0; e < cs.n; ++e) {
      const Mask other = neg ^ bit(e);
      if (other > neg && kernel.is_tope(other))
        edges.emplace_back(SignVector::tope(cs.n, neg), SignVector::tope(cs.n, other));
    }
  }
  return edges;
}

}  // namespace omtope
