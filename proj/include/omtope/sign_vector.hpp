#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "omtope/combinatorics.hpp"
#include "omtope/error.hpp"

namespace omtope {

enum class Sign : std::int8_t { minus = -1, zero = 0, plus = 1 };

constexpr Sign operator*(Sign a, Sign b) {
  return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}
constexpr Sign operator-(Sign a) { return static_cast<Sign>(-static_cast<int>(a)); }

constexpr char to_char(Sign s) {
  return s == Sign::plus ? '+' : (s == Sign::minus ? '-' : '0');
}

/// A vector in {+,-,0}^n stored as two disjoint bit masks.
///
/// Elements are 0-based here; the textual form puts element i at position i,
/// which reads as the 1-based element i+1.
class SignVector {
 public:
  SignVector() = default;

  explicit SignVector(int n) : n_(checked_size(n)) {}

  SignVector(int n, Mask plus, Mask minus) : n_(checked_size(n)), plus_(plus), minus_(minus) {
    require((plus & minus) == 0, ErrorKind::domain, "plus and minus parts overlap");
    require(((plus | minus) & ~full_mask(n)) == 0, ErrorKind::domain, "support exceeds ground set");
  }

  /// Full sign vector that is - on `negative` and + elsewhere.
  static SignVector tope(int n, Mask negative) {
    return SignVector(n, full_mask(n) & ~negative, negative & full_mask(n));
  }

  static SignVector all_positive(int n) { return tope(n, 0); }

  static SignVector parse(std::string_view text) {
    const int n = static_cast<int>(text.size());
    require(n <= kMaxElements, ErrorKind::too_large, "sign vectors hold at most 64 entries");
    Mask plus = 0, minus = 0;
    for (int i = 0; i < n; ++i) {
      switch (text[i]) {
        case '+': plus |= bit(i); break;
        case '-': minus |= bit(i); break;
        case '0': break;
        default:
          throw Error(ErrorKind::format, "invalid sign character '" + std::string(1, text[i]) + "'");
      }
    }
    return SignVector(n, plus, minus);
  }

  int size() const { return n_; }
  Mask plus() const { return plus_; }
  Mask minus() const { return minus_; }
  Mask support() const { return plus_ | minus_; }
  bool is_full() const { return support() == full_mask(n_); }
  bool is_zero() const { return support() == 0; }

  Sign operator[](int e) const {
    if (plus_ & bit(e)) return Sign::plus;
    if (minus_ & bit(e)) return Sign::minus;
    return Sign::zero;
  }

  SignVector operator-() const {
    SignVector out = *this;
    std::swap(out.plus_, out.minus_);
    return out;
  }

  /// Antipodal representative whose smallest support element is +.
  SignVector normalized() const {
    if (minus_ == 0) return *this;
    const Mask lowest = support() & (~support() + 1);
    return (minus_ & lowest) ? -*this : *this;
  }

  std::string str() const {
    std::string s(n_, '0');
    for (int i = 0; i < n_; ++i) s[i] = to_char((*this)[i]);
    return s;
  }

  friend bool operator==(const SignVector&, const SignVector&) = default;
  friend auto operator<=>(const SignVector&, const SignVector&) = default;

  friend std::ostream& operator<<(std::ostream& os, const SignVector& x) { return os << x.str(); }

 private:
  static int checked_size(int n) {
    require(n >= 0 && n <= kMaxElements, ErrorKind::too_large, "ground set must have 0..64 elements");
    return n;
  }

  int n_ = 0;
  Mask plus_ = 0;
  Mask minus_ = 0;
};

struct OrthogonalityDegree {
  int separation = 0;  // |S(X,Y)|, coordinates with X_e * Y_e = -
  int agreement = 0;   // |H(X,Y)|, coordinates with X_e * Y_e = +
  int degree = 0;      // min of the two

  friend bool operator==(const OrthogonalityDegree&, const OrthogonalityDegree&) = default;
};

inline OrthogonalityDegree orthogonality_degree(const SignVector& x, const SignVector& y) {
  require(x.size() == y.size(), ErrorKind::dimension, "sign vectors differ in length");
  const int sep = popcount((x.plus() & y.minus()) | (x.minus() & y.plus()));
  const int agr = popcount((x.plus() & y.plus()) | (x.minus() & y.minus()));
  return {sep, agr, std::min(sep, agr)};
}

/// Flips the signs of X on R; zeros stay zero.
inline SignVector reorient(const SignVector& x, Mask r) {
  require((r & ~full_mask(x.size())) == 0, ErrorKind::domain, "reorientation set exceeds ground set");
  const Mask keep_plus = x.plus() & ~r, keep_minus = x.minus() & ~r;
  return SignVector(x.size(), keep_plus | (x.minus() & r), keep_minus | (x.plus() & r));
}

struct BlockProfile {
  int m = 0;
  std::vector<int> sizes;
  int even = 0;
  int odd = 0;
};

/// Maximal runs of equal consecutive signs, left to right.
inline BlockProfile block_profile(const SignVector& t) {
  require(t.is_full(), ErrorKind::not_a_tope, "block profile needs a sign vector without zeros");
  BlockProfile out;
  const int n = t.size();
  int run = 0;
  for (int i = 0; i < n; ++i) {
    ++run;
    if (i + 1 == n || t[i] != t[i + 1]) {
      out.sizes.push_back(run);
      (run % 2 == 0 ? out.even : out.odd) += 1;
      run = 0;
    }
  }
  out.m = static_cast<int>(out.sizes.size());
  return out;
}

/// Number of blocks of the full sign vector with negative part `negative`.
inline int block_count(int n, Mask negative) {
  if (n == 0) return 0;
  // A block boundary sits between i and i+1 wherever the bits differ.
  const Mask changes = (negative ^ (negative >> 1)) & full_mask(n - 1);
  return 1 + popcount(changes);
}

}  // namespace omtope
