#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptchain/multipoly.hpp"

namespace ptchain {

namespace detail {

/// Determinant over the exact polynomial ring by Laplace expansion with
/// memoization on column subsets (division-free; fine for the small
/// Sylvester matrices this toolkit builds).
inline MultiPoly poly_determinant(const std::vector<std::vector<MultiPoly>>& m,
                                  const std::vector<std::string>& vars) {
  const std::size_t n = m.size();
  const MultiPoly zero(vars);
  if (n == 0) return MultiPoly::constant(vars, 1);
  std::map<unsigned long, MultiPoly> prev;
  prev[0] = MultiPoly::constant(vars, 1);
  for (std::size_t row = 0; row < n; ++row) {
    std::map<unsigned long, MultiPoly> next;
    for (const auto& [used, minor] : prev) {
      int parity = 0;
      for (std::size_t col = 0; col < n; ++col) {
        const unsigned long bit = 1UL << col;
        if (used & bit) continue;
        ++parity;  // number of free columns passed, 1-based
        const MultiPoly& entry = m[row][col];
        if (entry.is_zero()) continue;
        MultiPoly contrib = minor * entry;
        if (parity % 2 == 0) contrib = -contrib;
        const auto it = next.find(used | bit);
        if (it == next.end())
          next.emplace(used | bit, std::move(contrib));
        else
          it->second = it->second + contrib;
      }
    }
    prev = std::move(next);
  }
  const auto it = prev.find((n >= 64) ? ~0UL : ((1UL << n) - 1));
  return it == prev.end() ? zero : it->second;
}

}  // namespace detail

/// Sylvester-matrix resultant of p and q with respect to var, with the
/// integer content divided out (vanishes at every common root; extraneous
/// factors are possible and are filtered downstream).
inline MultiPoly resultant(const MultiPoly& p, const MultiPoly& q,
                           const std::string& var) {
  const int dp = p.degree_in(var);
  const int dq = q.degree_in(var);
  if (dp <= 0 && dq <= 0)
    throw std::invalid_argument("resultant: '" + var +
                                "' appears in neither polynomial");
  if (p.is_zero() || q.is_zero()) return MultiPoly(p.variables());

  const std::size_t n = static_cast<std::size_t>(dp + dq);
  if (n >= 64) throw std::invalid_argument("resultant: degree too large");
  std::vector<MultiPoly> pc(static_cast<std::size_t>(dp) + 1, MultiPoly(p.variables()));
  std::vector<MultiPoly> qc(static_cast<std::size_t>(dq) + 1, MultiPoly(p.variables()));
  for (int k = 0; k <= dp; ++k) pc[static_cast<std::size_t>(k)] = p.coeff_of_power(var, static_cast<unsigned>(k));
  for (int k = 0; k <= dq; ++k) qc[static_cast<std::size_t>(k)] = q.coeff_of_power(var, static_cast<unsigned>(k));

  // Sylvester matrix: dq rows of p's coefficients, then dp rows of q's,
  // highest power first, each row shifted one column right of the last.
  std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n, MultiPoly(p.variables())));
  for (int r = 0; r < dq; ++r)
    for (int k = 0; k <= dp; ++k)
      m[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = pc[static_cast<std::size_t>(dp - k)];
  for (int r = 0; r < dp; ++r)
    for (int k = 0; k <= dq; ++k)
      m[static_cast<std::size_t>(dq + r)][static_cast<std::size_t>(r + k)] = qc[static_cast<std::size_t>(dq - k)];

  return detail::poly_determinant(m, p.variables()).removed_content();
}

}  // namespace ptchain
