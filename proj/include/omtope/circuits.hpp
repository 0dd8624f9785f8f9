#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "omtope/chirotope.hpp"
#include "omtope/combinatorics.hpp"
#include "omtope/error.hpp"
#include "omtope/sign_vector.hpp"

namespace omtope {

/// Circuits of a uniform oriented matroid, one per antipodal pair, each
/// normalized so its smallest support element is +. Members are listed in
/// lexicographic order of their (r+1)-element supports.
///
/// A set with no members (n == r) is representable but poisoned: every
/// orthogonality statistic over it raises ErrorKind::poisoned_circuit_set.
struct CircuitSet {
  int n = 0;
  int r = 0;
  std::vector<SignVector> members;

  bool poisoned() const { return members.empty(); }
};

inline void require_circuits(const CircuitSet& cs) {
  require(!cs.poisoned(), ErrorKind::poisoned_circuit_set,
          "matroid has no circuits (n = r); orthogonality is undefined");
}

/// The circuit supported on the sorted set {b_1 < ... < b_{r+1}} satisfies
/// chi(B \ b_i) = -X_{b_i} X_{b_{i+1}} chi(B \ b_{i+1}); seeding X_{b_1} = +
/// fixes the normalized representative.
inline SignVector circuit_on(const Chirotope& chi, Mask support) {
  const auto b = elements_of(support);
  Mask plus = bit(b[0]), minus = 0;
  int prev = 1;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const int here = chi.sign_of(support & ~bit(b[i]));
    const int next = chi.sign_of(support & ~bit(b[i + 1]));
    const int x = -prev * here * next;
    (x > 0 ? plus : minus) |= bit(b[i + 1]);
    prev = x;
  }
  return SignVector(chi.size(), plus, minus);
}

inline CircuitSet circuits_from_chirotope(const Chirotope& chi) {
  CircuitSet cs{chi.size(), chi.rank(), {}};
  if (chi.size() == chi.rank()) return cs;
  const auto supports = subsets_lex(chi.size(), chi.rank() + 1);
  cs.members.reserve(supports.size());
  for (Mask s : supports) cs.members.push_back(circuit_on(chi, s));
  return cs;
}

/// Cocircuits of chi: the circuits of its dual (supports of size n - r + 1).
inline CircuitSet cocircuits(const Chirotope& chi) { return circuits_from_chirotope(chi.dual()); }

/// The same circuits after reorienting R, renormalized.
inline CircuitSet reoriented(const CircuitSet& cs, Mask r_set) {
  CircuitSet out{cs.n, cs.r, {}};
  out.members.reserve(cs.members.size());
  for (const auto& x : cs.members) out.members.push_back(reorient(x, r_set).normalized());
  return out;
}

/// Members together with their negatives.
inline std::vector<SignVector> with_antipodes(const CircuitSet& cs) {
  std::vector<SignVector> out;
  out.reserve(2 * cs.members.size());
  for (const auto& x : cs.members) {
    out.push_back(x);
    out.push_back(-x);
  }
  return out;
}

enum class CircuitAxiom { c0, c1, c2, c3 };

struct AxiomReport {
  bool ok = true;
  std::optional<CircuitAxiom> violated;
  std::string detail;
};

/// Brute-force check of the circuit axioms (C0)-(C3) on an explicit family.
/// (C3) is checked over every ordered pair X != -Y and every pivot e in X+ & Y-.
inline AxiomReport check_circuit_axioms(std::span<const SignVector> family) {
  auto fail = [](CircuitAxiom a, std::string d) { return AxiomReport{false, a, std::move(d)}; };
  const std::set<SignVector> members(family.begin(), family.end());

  for (const auto& x : family)
    if (x.is_zero()) return fail(CircuitAxiom::c0, "zero vector is a member");

  for (const auto& x : family)
    if (!members.contains(-x)) return fail(CircuitAxiom::c1, x.str() + " present but its negative is not");

  for (const auto& x : family)
    for (const auto& y : family)
      if ((x.support() & ~y.support()) == 0 && x != y && x != -y)
        return fail(CircuitAxiom::c2, x.str() + " has support inside " + y.str());

  for (const auto& x : family) {
    for (const auto& y : family) {
      if (x == -y) continue;
      Mask pivots = x.plus() & y.minus();
      while (pivots) {
        const Mask e = pivots & (~pivots + 1);
        pivots &= pivots - 1;
        const Mask allowed_plus = (x.plus() | y.plus()) & ~e;
        const Mask allowed_minus = (x.minus() | y.minus()) & ~e;
        bool found = false;
        for (const auto& z : family) {
          if ((z.plus() & ~allowed_plus) == 0 && (z.minus() & ~allowed_minus) == 0) {
            found = true;
            break;
          }
        }
        if (!found) return fail(CircuitAxiom::c3, "no elimination of " + x.str() + " and " + y.str());
      }
    }
  }
  return {};
}

/// F is a face iff the vector + off F and 0 on F is orthogonal to every circuit.
inline bool is_face(const CircuitSet& cs, Mask f) {
  require((f & ~full_mask(cs.n)) == 0, ErrorKind::domain, "face candidate exceeds ground set");
  const Mask y = full_mask(cs.n) & ~f;
  for (const auto& x : cs.members) {
    const bool agree = (x.plus() & y) != 0;
    const bool separate = (x.minus() & y) != 0;
    if (agree != separate) return false;
  }
  return true;
}

}  // namespace omtope
