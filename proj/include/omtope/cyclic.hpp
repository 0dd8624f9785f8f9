#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "omtope/chirotope.hpp"
#include "omtope/circuits.hpp"
#include "omtope/combinatorics.hpp"
#include "omtope/error.hpp"
#include "omtope/neighborly.hpp"
#include "omtope/sign_vector.hpp"

namespace omtope {

// Analytics for the alternating matroid C_r(n), whose topes are exactly the
// full sign vectors with at most r blocks.

inline bool is_cyclic_tope(const SignVector& t, int r) {
  require(t.is_full(), ErrorKind::domain, "sign vector has zero entries");
  require(t.size() >= r + 1, ErrorKind::domain, "need n >= r+1");
  return block_profile(t).m <= r;
}

/// O(m) = ceil((r+1-m)/2), the least ort of a cyclic tope with m blocks.
constexpr int big_o(int m, int r) {
  const int num = r + 1 - m;
  return num >= 0 ? (num + 1) / 2 : -((-num) / 2);
}

struct CyclicOrt {
  int value = 0;
  bool from_blocks = false;  // true when read off the block count without touching circuits
};

/// ort of a tope of C_r(n). When r+1 <= n - (number of even blocks) the value
/// is O(m); otherwise it falls back to scanning the circuits.
inline CyclicOrt ort_cyclic(const SignVector& t, int r) {
  require(is_cyclic_tope(t, r), ErrorKind::domain, "not a tope of the alternating matroid");
  const auto profile = block_profile(t);
  const int n = t.size();
  if (r + 1 <= n - profile.even) return {big_o(profile.m, r), true};
  return {ort(circuits_from_chirotope(Chirotope::alternating(r, n)), t), false};
}

/// 2 * sum_{i<r} C(n-1, i): the tope count shared by every uniform rank-r matroid on n elements.
inline BigInt tope_count_uniform(int r, int n) {
  require(r >= 1 && n >= r, ErrorKind::domain, "need 1 <= r <= n");
  BigInt sum = 0;
  for (int i = 0; i < r; ++i) sum += big_binomial(n - 1, i);
  return 2 * sum;
}

/// Whether the block-count formula for o(C_r(n), i), i >= k, applies.
constexpr bool closed_form_valid(int r, int n, int k) {
  return k >= 0 && k <= max_level(r) && n >= 2 * (r - k) + 1 && 2 * (r - k) + 1 >= r + 2;
}

/// Entries i = k..floor((r-1)/2) of the o-vector of C_r(n): 2 * C(n, r-1-2i).
inline std::vector<BigInt> o_vector_closed(int r, int n, int k) {
  require(closed_form_valid(r, n, k), ErrorKind::out_of_validity,
          "closed form needs n >= 2(r-k)+1 >= r+2 (r=" + std::to_string(r) + ", n=" + std::to_string(n) +
              ", k=" + std::to_string(k) + ")");
  std::vector<BigInt> out;
  for (int i = k; i <= max_level(r); ++i) out.push_back(2 * big_binomial(n, r - 1 - 2 * i));
  return out;
}

/// Full o-vector of C_r(r+1).
inline std::vector<BigInt> o_vector_small(int r) {
  require(r >= 3, ErrorKind::domain, "formula for n = r+1 needs r >= 3");
  std::vector<BigInt> out;
  for (int k = 0; k <= max_level(r); ++k) {
    const BigInt c = big_binomial(r + 1, k + 1);
    out.push_back((r % 2 == 1 && k == (r - 1) / 2) ? c : 2 * c);
  }
  return out;
}

/// c_r(n, 1) as transcribed from earlier literature. Known not to match brute
/// force at small (r, n); never used as an authority.
inline BigInt literature_c1(int r, int n) {
  BigInt sum = big_binomial(r - 1, n - r + 1) + big_binomial(r, n - r);
  for (int i = 0; i <= r - 3; ++i) sum += big_binomial(n - 1, i);
  return 2 * sum;
}

enum class Provenance { closed_form, small_formula, brute_force, recurrence };

constexpr std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::closed_form: return "closed-form";
    case Provenance::small_formula: return "n=r+1-formula";
    case Provenance::brute_force: return "brute-force";
    case Provenance::recurrence: return "recurrence";
  }
  return "?";
}

inline Provenance parse_provenance(std::string_view s) {
  for (auto p : {Provenance::closed_form, Provenance::small_formula, Provenance::brute_force, Provenance::recurrence})
    if (to_string(p) == s) return p;
  throw Error(ErrorKind::format, "unknown provenance '" + std::string(s) + "'");
}

struct CValue {
  BigInt value;
  Provenance provenance = Provenance::brute_force;
};

/// m(C_r(n), k) by enumeration.
inline std::uint64_t c_value_brute_force(int r, int n, int k, unsigned threads = 1) {
  return m_value(circuits_from_chirotope(Chirotope::alternating(r, n)), k, threads);
}

/// Memo of c_r(n,k) keyed by (r, n, k) with the path that produced each cell.
///
/// Formula cells with n <= verify_up_to are re-derived by enumeration; if the
/// two disagree the enumerated value wins and the mismatch is recorded as a
/// defect. Concurrent fills of the same key compute equal values, so the
/// first writer wins without changing observable results.
class CValueTable {
 public:
  struct Options {
    int verify_up_to = 12;
    int brute_force_limit = 26;
    unsigned threads = 1;
  };

  CValueTable() = default;
  explicit CValueTable(Options options) : options_(options) {}

  CValue get(int r, int n, int k) {
    require(r >= 1 && n >= r + 1, ErrorKind::domain, "c_r(n,k) needs n >= r+1");
    require(k >= 0 && k <= max_level(r), ErrorKind::domain,
            "level " + std::to_string(k) + " outside 0.." + std::to_string(max_level(r)));
    if (auto hit = lookup(r, n, k)) return *hit;

    CValue cell;
    if (closed_form_valid(r, n, k)) {
      cell = {sum(o_vector_closed(r, n, k)), Provenance::closed_form};
    } else if (n == r + 1 && r >= 3) {
      const auto ov = o_vector_small(r);
      cell = {sum(ov, k), Provenance::small_formula};
    } else {
      require(n <= options_.brute_force_limit, ErrorKind::too_large,
              "no formula applies and n exceeds the enumeration limit");
      cell = {BigInt(c_value_brute_force(r, n, k, options_.threads)), Provenance::brute_force};
    }

    if (cell.provenance != Provenance::brute_force && n <= options_.verify_up_to) {
      const BigInt brute = c_value_brute_force(r, n, k, options_.threads);
      if (brute != cell.value) {
        record_defect("c_" + std::to_string(r) + "(" + std::to_string(n) + "," + std::to_string(k) + "): " +
                      std::string(to_string(cell.provenance)) + " gives " + cell.value.str() +
                      ", enumeration gives " + brute.str());
        cell = {brute, Provenance::brute_force};
      }
    }
    store(r, n, k, cell);
    check_recurrence_around(r, n, k);
    return lookup(r, n, k).value();
  }

  BigInt value(int r, int n, int k) { return get(r, n, k).value; }

  /// c_r(n,k), or 0 when k is not admissible for rank r.
  BigInt value_or_zero(int r, int n, int k) {
    if (r < 1 || k > max_level(r)) return 0;
    return value(r, n, k);
  }

  /// c_r(n-1,k) + c_{r-1}(n-1,k); stored with recurrence provenance if the cell is new.
  CValue derive_by_recurrence(int r, int n, int k) {
    require(n - 1 >= 2 * (r - k) + 1, ErrorKind::out_of_validity, "recurrence needs n-1 >= 2(r-k)+1");
    const BigInt v = value(r, n - 1, k) + value_or_zero(r - 1, n - 1, k);
    if (!lookup(r, n, k)) store(r, n, k, {v, Provenance::recurrence});
    return {v, Provenance::recurrence};
  }

  std::optional<CValue> lookup(int r, int n, int k) const {
    std::lock_guard lock(mutex_);
    auto it = cells_.find({r, n, k});
    if (it == cells_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<std::string> defects() const {
    std::lock_guard lock(mutex_);
    return defects_;
  }

  /// One line per cell: "r n k value provenance".
  void save(std::ostream& out) const {
    std::lock_guard lock(mutex_);
    for (const auto& [key, cell] : cells_) {
      const auto& [r, n, k] = key;
      out << r << ' ' << n << ' ' << k << ' ' << cell.value << ' ' << to_string(cell.provenance) << '\n';
    }
  }

  void load(std::istream& in) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line.front() == '#') continue;
      std::istringstream ss(line);
      int r = 0, n = 0, k = 0;
      std::string value, prov;
      if (!(ss >> r >> n >> k >> value >> prov))
        throw Error(ErrorKind::format, "cache line " + std::to_string(lineno) + " malformed");
      store(r, n, k, {BigInt(value), parse_provenance(prov)});
    }
  }

 private:
  using Key = std::tuple<int, int, int>;

  static BigInt sum(const std::vector<BigInt>& v, std::size_t from = 0) {
    BigInt s = 0;
    for (std::size_t i = from; i < v.size(); ++i) s += v[i];
    return s;
  }

  void store(int r, int n, int k, const CValue& cell) {
    std::lock_guard lock(mutex_);
    cells_.try_emplace({r, n, k}, cell);
  }

  void record_defect(std::string what) {
    std::lock_guard lock(mutex_);
    defects_.push_back(std::move(what));
  }

  void check_one(int r, int n, int k) {
    if (n - 1 < 2 * (r - k) + 1 || r < 2) return;
    const auto whole = lookup(r, n, k), del = lookup(r, n - 1, k);
    if (!whole || !del) return;
    BigInt con = 0;
    if (k <= max_level(r - 1)) {
      const auto cell = lookup(r - 1, n - 1, k);
      if (!cell) return;
      con = cell->value;
    }
    if (whole->value != del->value + con)
      record_defect("recurrence fails at c_" + std::to_string(r) + "(" + std::to_string(n) + "," +
                    std::to_string(k) + ")");
  }

  void check_recurrence_around(int r, int n, int k) {
    check_one(r, n, k);
    check_one(r, n + 1, k);
    check_one(r + 1, n + 1, k);
  }

  Options options_;
  mutable std::mutex mutex_;
  std::map<Key, CValue> cells_;
  std::vector<std::string> defects_;
};

struct LiteratureCheck {
  int r = 0;
  int n = 0;
  BigInt formula;
  BigInt enumerated;
  bool matches() const { return formula == enumerated; }
};

/// Compares literature_c1 with enumeration on 3 <= r <= r_max, r+1 <= n <= n_max.
inline std::vector<LiteratureCheck> literature_c1_validity(int r_max, int n_max) {
  std::vector<LiteratureCheck> out;
  for (int r = 3; r <= r_max; ++r)
    for (int n = r + 1; n <= n_max; ++n)
      out.push_back({r, n, literature_c1(r, n), BigInt(c_value_brute_force(r, n, 1))});
  return out;
}

}  // namespace omtope
