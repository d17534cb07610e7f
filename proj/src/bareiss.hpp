#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace lehmer::detail {

/// Fraction-free Gaussian elimination. `exact_div(a, b)` must return a / b for
/// divisions that are exact in the coefficient ring.
template <class T, class IsZero, class ExactDiv>
T bareiss_determinant(std::vector<std::vector<T>> m, const T& one, IsZero is_zero,
                      ExactDiv exact_div) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  bool negate = false;
  T prev = one;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m[k][k])) {
      std::size_t pivot = k + 1;
      while (pivot < n && is_zero(m[pivot][k])) ++pivot;
      if (pivot == n) return T{};
      std::swap(m[k], m[pivot]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        T v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = exact_div(v, prev);
      }
      m[i][k] = T{};
    }
    prev = m[k][k];
  }
  T det = m[n - 1][n - 1];
  if (negate) det = -det;
  return det;
}

/// Sylvester matrix of f = sum f[i] y^i and g = sum g[i] y^i (lowest first).
template <class T>
std::vector<std::vector<T>> sylvester_matrix(const std::vector<T>& f, const std::vector<T>& g) {
  const std::size_t m = f.size() - 1;
  const std::size_t n = g.size() - 1;
  const std::size_t size = m + n;
  std::vector<std::vector<T>> s(size, std::vector<T>(size));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = f[m - i];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = g[n - i];
  return s;
}

}  // namespace lehmer::detail
