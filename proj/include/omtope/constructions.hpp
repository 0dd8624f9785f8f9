#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "omtope/chirotope.hpp"
#include "omtope/circuits.hpp"
#include "omtope/combinatorics.hpp"
#include "omtope/error.hpp"
#include "omtope/neighborly.hpp"
#include "omtope/sign_vector.hpp"

namespace omtope {

enum class ConstructionMethod { search, disjoint_cocircuits, composite };

constexpr std::string_view to_string(ConstructionMethod m) {
  switch (m) {
    case ConstructionMethod::search: return "search";
    case ConstructionMethod::disjoint_cocircuits: return "cocircuits";
    case ConstructionMethod::composite: return "composite";
  }
  return "?";
}

/// A reorientation set R together with the level it certifies.
/// `level` is ort(T) - 1 for the tope T negative exactly on R, as measured by
/// enumeration over all circuits; it may exceed the level that was requested.
struct ReorientationWitness {
  Mask reorient = 0;
  int level = -1;
  ConstructionMethod method = ConstructionMethod::search;
  bool verified = false;
};

/// Re-derives the level of R from scratch against every circuit of chi.
inline ReorientationWitness verify_witness(const Chirotope& chi, Mask r_set, ConstructionMethod method) {
  const auto cs = circuits_from_chirotope(chi);
  const int o = ort(cs, SignVector::tope(chi.size(), r_set));
  return {r_set, o - 1, method, o >= 1};
}

inline void require_admissible(const Chirotope& chi, int k) {
  require(chi.size() >= chi.rank() + 1, ErrorKind::domain, "need n >= r+1");
  require(k >= 0 && k <= max_level(chi.rank()), ErrorKind::domain,
          "level " + std::to_string(k) + " outside 0.." + std::to_string(max_level(chi.rank())));
}

/// First tope in enumeration order with ort >= k+1, as the witness R = T^-.
inline std::optional<ReorientationWitness> search_k_neighborly(const Chirotope& chi, int k) {
  require_admissible(chi, k);
  const OrthogonalityKernel kernel(circuits_from_chirotope(chi));
  require_enumerable(chi.size());
  const std::uint64_t all = std::uint64_t{1} << chi.size();
  for (std::uint64_t neg = 0; neg < all; ++neg) {
    if (kernel.at_least(neg, k + 1)) return ReorientationWitness{neg, kernel.ort(neg) - 1, ConstructionMethod::search, true};
  }
  return std::nullopt;
}

/// The cocircuit of chi supported on `support` (|support| = n - r + 1).
inline SignVector cocircuit_on(const Chirotope& chi, Mask support) {
  return circuit_on(chi.dual(), support);
}

/// For n = r - 1 + floor((r-1)/k): the k+1 leftmost consecutive chunks of size
/// floor((r-1)/k) are disjoint cocircuit supports; reorienting their negative
/// parts makes all of them positive, so every k-set misses one of them.
inline ReorientationWitness disjoint_cocircuit_construction(const Chirotope& chi, int k) {
  const int r = chi.rank(), n = chi.size();
  require(k >= 2 && k <= max_level(r), ErrorKind::precondition, "needs 2 <= k <= floor((r-1)/2)");
  const int chunk = (r - 1) / k;
  require(n == r - 1 + chunk, ErrorKind::precondition,
          "needs n = r-1+floor((r-1)/k) = " + std::to_string(r - 1 + chunk) + ", got " + std::to_string(n));
  const Chirotope dual = chi.dual();
  Mask r_set = 0;
  for (int i = 0; i <= k; ++i) {
    const Mask support = full_mask(chunk) << (i * chunk);
    r_set |= circuit_on(dual, support).minus();
  }
  return verify_witness(chi, r_set, ConstructionMethod::disjoint_cocircuits);
}

/// Parameters of the composite construction: r - 1 = alpha * k + beta.
struct CompositeLayout {
  int alpha = 0;
  int beta = 0;
  std::vector<Mask> parts;  // A_1 .. A_{k+1}
  Mask b = 0;               // B, the last beta+1 elements
  std::vector<Mask> d;      // D_i = A_{2i-1} ∪ A_{2i} ∪ {b_i}, plus A_{k+1} ∪ {b_{(k+2)/2}} for even k
};

inline CompositeLayout composite_layout(int r, int n, int k) {
  require(k >= 2 && k <= max_level(r), ErrorKind::precondition, "needs 2 <= k <= floor((r-1)/2)");
  CompositeLayout L;
  L.alpha = (r - 1) / k;
  L.beta = (r - 1) % k;
  require(L.beta >= k / 2 && L.beta <= k - 1, ErrorKind::precondition,
          "needs r-1 = beta (mod k) with ceil((k-1)/2) <= beta <= k-1; beta = " + std::to_string(L.beta));
  require(n == r + L.alpha, ErrorKind::precondition,
          "needs n = r+floor((r-1)/k) = " + std::to_string(r + L.alpha) + ", got " + std::to_string(n));
  for (int i = 0; i <= k; ++i) L.parts.push_back(full_mask(L.alpha) << (i * L.alpha));
  const int b_start = (k + 1) * L.alpha;
  L.b = full_mask(L.beta + 1) << b_start;
  for (int i = 0; i < (k + 1) / 2; ++i) L.d.push_back(L.parts[2 * i] | L.parts[2 * i + 1] | bit(b_start + i));
  if (k % 2 == 0) L.d.push_back(L.parts[k] | bit(b_start + k / 2));
  return L;
}

/// For n = r + floor((r-1)/k) with the residue condition on r-1: each D_i
/// (i <= floor((k+1)/2)) is contracted to a rank alpha+1 matroid on 2alpha+1
/// elements, a 1-neighborly reorientation of it is found exhaustively, and the
/// pieces are assembled; for even k the negative part of the cocircuit on the
/// last D is added.
inline ReorientationWitness composite_construction(const Chirotope& chi, int k) {
  const int r = chi.rank(), n = chi.size();
  const auto layout = composite_layout(r, n, k);
  Mask r_set = 0;
  for (int i = 0; i < (k + 1) / 2; ++i) {
    const Mask d = layout.d[i];
    const Chirotope minor = chi.contracted_set(full_mask(n) & ~d);
    const auto local = search_k_neighborly(minor, 1);
    require(local.has_value(), ErrorKind::precondition, "contraction has no 1-neighborly reorientation");
    const auto labels = elements_of(d);
    for (int e : elements_of(local->reorient)) r_set |= bit(labels[e]);
  }
  if (k % 2 == 0) r_set |= cocircuit_on(chi, layout.d.back()).minus();
  return verify_witness(chi, r_set, ConstructionMethod::composite);
}

}  // namespace omtope
