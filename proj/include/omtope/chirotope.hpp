#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "omtope/combinatorics.hpp"
#include "omtope/error.hpp"
#include "omtope/exact_determinant.hpp"
#include "omtope/sign_vector.hpp"

namespace omtope {

/// Order in which a chirotope string lists the sorted r-subsets.
enum class BaseOrder { lex, colex };

inline BaseOrder parse_base_order(std::string_view s) {
  if (s == "lex") return BaseOrder::lex;
  if (s == "colex") return BaseOrder::colex;
  throw Error(ErrorKind::format, "base order must be 'lex' or 'colex', got '" + std::string(s) + "'");
}

/// Integer point configuration: one row per element, r coordinates per row.
using PointRows = std::vector<std::vector<std::int64_t>>;

/// Uniform chirotope of rank r on n elements.
///
/// Signs are stored for sorted r-subsets only, indexed by lexicographic rank;
/// evaluation on an arbitrary tuple applies the sorting permutation's parity.
class Chirotope {
 public:
  Chirotope() = default;

  /// `signs` holds +1 / -1 per sorted r-subset in lexicographic order.
  Chirotope(int r, int n, std::vector<std::int8_t> signs) : r_(r), n_(n), signs_(std::move(signs)) {
    check_shape(r, n);
    require(signs_.size() == binomial(n, r), ErrorKind::format,
            "expected " + std::to_string(binomial(n, r)) + " signs, got " + std::to_string(signs_.size()));
    for (auto s : signs_)
      require(s == 1 || s == -1, ErrorKind::non_uniform_unsupported, "chirotope entries must be nonzero");
  }

  static Chirotope alternating(int r, int n) {
    check_shape(r, n);
    return Chirotope(r, n, std::vector<std::int8_t>(binomial(n, r), 1));
  }

  static Chirotope parse(std::string_view text, int r, int n, BaseOrder order = BaseOrder::lex) {
    check_shape(r, n);
    const auto expected = binomial(n, r);
    require(text.size() == expected, ErrorKind::format,
            "chirotope of rank " + std::to_string(r) + " on " + std::to_string(n) + " elements needs " +
                std::to_string(expected) + " signs, got " + std::to_string(text.size()));
    std::vector<std::int8_t> raw(expected);
    for (std::size_t i = 0; i < text.size(); ++i) {
      switch (text[i]) {
        case '+': raw[i] = 1; break;
        case '-': raw[i] = -1; break;
        case '0': throw Error(ErrorKind::non_uniform_unsupported, "zero entry at position " + std::to_string(i + 1));
        default:
          throw Error(ErrorKind::format, "invalid chirotope character '" + std::string(1, text[i]) + "' at position " +
                                             std::to_string(i + 1));
      }
    }
    if (order == BaseOrder::lex) return Chirotope(r, n, std::move(raw));
    std::vector<std::int8_t> lex(expected);
    for (Mask b : subsets_lex(n, r)) lex[lex_rank(b, n)] = raw[colex_rank(b)];
    return Chirotope(r, n, std::move(lex));
  }

  /// Sign of each sorted r-subset = sign of the exact determinant of its rows.
  static Chirotope from_points(const PointRows& rows) {
    const int n = static_cast<int>(rows.size());
    require(n >= 1, ErrorKind::domain, "point configuration is empty");
    const int r = static_cast<int>(rows.front().size());
    for (const auto& row : rows)
      require(static_cast<int>(row.size()) == r, ErrorKind::dimension, "point rows differ in length");
    check_shape(r, n);
    std::vector<std::int8_t> signs;
    signs.reserve(binomial(n, r));
    PointRows minor(r);
    for (Mask b : subsets_lex(n, r)) {
      int i = 0;
      for (int e : elements_of(b)) minor[i++] = rows[e];
      const int s = determinant_sign(minor);
      if (s == 0) {
        std::string which;
        for (int e : elements_of(b)) which += (which.empty() ? "" : ",") + std::to_string(e + 1);
        throw Error(ErrorKind::degenerate_configuration, "zero minor on rows {" + which + "}");
      }
      signs.push_back(static_cast<std::int8_t>(s));
    }
    return Chirotope(r, n, std::move(signs));
  }

  int rank() const { return r_; }
  int size() const { return n_; }
  std::span<const std::int8_t> signs() const { return signs_; }

  /// Stored sign of a sorted r-subset given as a mask.
  int sign_of(Mask basis) const { return signs_[lex_rank(basis, n_)]; }

  /// Evaluates an ordered tuple of (0-based) elements.
  Sign eval(std::span<const int> tuple) const {
    require(static_cast<int>(tuple.size()) == r_, ErrorKind::domain,
            "tuple arity " + std::to_string(tuple.size()) + " differs from rank " + std::to_string(r_));
    Mask b = 0;
    for (int e : tuple) {
      require(e >= 0 && e < n_, ErrorKind::domain, "tuple entry outside the ground set");
      if (b & bit(e)) return Sign::zero;
      b |= bit(e);
    }
    return static_cast<Sign>(sign_of(b) * permutation_sign(tuple));
  }

  Chirotope reoriented(Mask r_set) const {
    require((r_set & ~full_mask(n_)) == 0, ErrorKind::domain, "reorientation set exceeds ground set");
    std::vector<std::int8_t> out(signs_.size());
    std::size_t i = 0;
    for (Mask b : subsets_lex(n_, r_)) {
      out[i] = (popcount(b & r_set) % 2 == 0) ? signs_[i] : static_cast<std::int8_t>(-signs_[i]);
      ++i;
    }
    return Chirotope(r_, n_, std::move(out));
  }

  /// chi*(S) = chi(S') * sign(S, S') with S' the sorted complement of S.
  Chirotope dual() const {
    require(r_ < n_, ErrorKind::degenerate_dual, "rank equals ground-set size; dual has rank 0");
    const int dr = n_ - r_;
    std::vector<std::int8_t> out;
    out.reserve(binomial(n_, dr));
    for (Mask s : subsets_lex(n_, dr)) {
      const Mask comp = full_mask(n_) & ~s;
      auto seq = elements_of(s);
      const auto rest = elements_of(comp);
      seq.insert(seq.end(), rest.begin(), rest.end());
      out.push_back(static_cast<std::int8_t>(sign_of(comp) * permutation_sign(seq)));
    }
    return Chirotope(dr, n_, std::move(out));
  }

  /// Deletion of element e; elements above e shift down by one.
  Chirotope deleted(int e) const {
    require(e >= 0 && e < n_, ErrorKind::domain, "element outside the ground set");
    require(n_ - 1 >= r_, ErrorKind::rank_collapse, "deletion would drop the rank");
    std::vector<std::int8_t> out;
    out.reserve(binomial(n_ - 1, r_));
    for (Mask s : subsets_lex(n_ - 1, r_)) out.push_back(static_cast<std::int8_t>(sign_of(expand(s, bit(e)))));
    return Chirotope(r_, n_ - 1, std::move(out));
  }

  /// Contraction of element e: chi/e(S) = chi(e, S).
  Chirotope contracted(int e) const {
    require(e >= 0 && e < n_, ErrorKind::domain, "element outside the ground set");
    return contracted_set(bit(e));
  }

  /// Contraction of a set F: chi/F(S) = chi(f_1, ..., f_j, S) with F in increasing order.
  Chirotope contracted_set(Mask f) const {
    require((f & ~full_mask(n_)) == 0, ErrorKind::domain, "contraction set exceeds ground set");
    const int j = popcount(f);
    require(r_ - j >= 1, ErrorKind::rank_collapse, "contraction would leave rank below 1");
    const int nr = r_ - j, nn = n_ - j;
    const auto prefix = elements_of(f);
    std::vector<std::int8_t> out;
    out.reserve(binomial(nn, nr));
    std::vector<int> tuple(r_);
    for (Mask s : subsets_lex(nn, nr)) {
      std::copy(prefix.begin(), prefix.end(), tuple.begin());
      const auto rest = elements_of(expand(s, f));
      std::copy(rest.begin(), rest.end(), tuple.begin() + j);
      out.push_back(static_cast<std::int8_t>(eval(tuple)));
    }
    return Chirotope(nr, nn, std::move(out));
  }

  std::string serialize(BaseOrder order = BaseOrder::lex) const {
    std::string out(signs_.size(), '+');
    std::size_t i = 0;
    for (Mask b : subsets_lex(n_, r_)) {
      const std::size_t pos = order == BaseOrder::lex ? i : colex_rank(b);
      out[pos] = signs_[i] > 0 ? '+' : '-';
      ++i;
    }
    return out;
  }

  friend bool operator==(const Chirotope&, const Chirotope&) = default;

 private:
  static void check_shape(int r, int n) {
    require(n <= kMaxElements, ErrorKind::too_large, "ground set limited to 64 elements");
    require(r >= 1 && r <= n, ErrorKind::domain,
            "rank " + std::to_string(r) + " invalid for " + std::to_string(n) + " elements");
  }

  /// Maps a subset of the reduced ground set back into the full one, skipping `removed`.
  static Mask expand(Mask s, Mask removed) {
    Mask out = 0;
    int src = 0;
    for (int dst = 0; s >> src; ++dst) {
      if (removed & bit(dst)) continue;
      if (s & bit(src)) out |= bit(dst);
      ++src;
    }
    return out;
  }

  int r_ = 0;
  int n_ = 0;
  std::vector<std::int8_t> signs_;
};

inline PointRows parse_points(std::istream& in) {
  PointRows rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') continue;
    std::istringstream ss(line);
    std::vector<std::int64_t> row;
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        row.push_back(std::stoll(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::logic_error&) {
        throw Error(ErrorKind::format, "line " + std::to_string(lineno) + ": not an integer: '" + tok + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Random integer configurations with coordinates in [-bound, bound]; rejects
/// degenerate draws. The generator owns its state and is fully determined by the seed.
class PointSampler {
 public:
  explicit PointSampler(std::uint64_t seed, std::int64_t bound = 1000) : rng_(seed), coord_(-bound, bound) {}

  PointRows sample_rows(int r, int n) {
    PointRows rows(n, std::vector<std::int64_t>(r));
    for (auto& row : rows)
      for (auto& x : row) x = coord_(rng_);
    return rows;
  }

  Chirotope sample(int r, int n, int max_attempts = 1000) {
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
      try {
        return Chirotope::from_points(sample_rows(r, n));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::degenerate_configuration) throw;
      }
    }
    throw Error(ErrorKind::degenerate_configuration, "no general-position sample found");
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_int_distribution<std::int64_t> coord_;
};

}  // namespace omtope
