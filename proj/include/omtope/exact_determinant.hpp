#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "omtope/combinatorics.hpp"

namespace omtope {

/// Sign of det(A) for a square integer matrix, computed exactly by
/// fraction-free (Bareiss) elimination over arbitrary-precision integers.
inline int determinant_sign(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  const BigInt& d = a[n - 1][n - 1];
  if (d == 0) return 0;
  return d > 0 ? sign : -sign;
}

inline int determinant_sign(const std::vector<std::vector<std::int64_t>>& rows) {
  std::vector<std::vector<BigInt>> a;
  a.reserve(rows.size());
  for (const auto& row : rows) a.emplace_back(row.begin(), row.end());
  return determinant_sign(std::move(a));
}

}  // namespace omtope
