#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptchain/multipoly.hpp"
#include "ptchain/rational.hpp"
#include "ptchain/unipoly.hpp"

namespace ptchain {

enum class ChainFamily { GeneralPT, Symmetrized, GeneralTridiagonal };

/// Model selector for the tridiagonal chain Hamiltonians.
///
/// GeneralPT: diagonal 1, 3, ..., 2N-1 and subdiagonal = -superdiagonal;
/// `couplings` holds the N-1 superdiagonal entries a_0..a_{N-2}.
///
/// Symmetrized: the up-down symmetric variant; diagonal N-1, N-3, ..., 1-N
/// and mirrored couplings a_j = a_{N-2-j}. `couplings` stores the
/// floor(N/2) free values ordered outermost (z = a_0) first, central last.
/// Reports expose the reversed, central-first letters a, b, c, ...
///
/// GeneralTridiagonal: explicit diag/super/sub, no structure imposed.
struct ChainSpec {
  ChainFamily family = ChainFamily::Symmetrized;
  int dimension = 0;
  std::vector<Rational> couplings;

  // GeneralTridiagonal only.
  std::vector<Rational> diag;
  std::vector<Rational> super;
  std::vector<Rational> sub;
};

struct TridiagonalMatrix {
  std::vector<Rational> diag;   // length N
  std::vector<Rational> super;  // length N-1
  std::vector<Rational> sub;    // length N-1

  int dimension() const { return static_cast<int>(diag.size()); }
};

inline int half_dimension(int n) { return n / 2; }

/// Central-first letter index of superdiagonal position `edge` in the
/// symmetrized chain (0 = the central coupling "a").
inline int symmetrized_letter_of_edge(int n, int edge) {
  if (n % 2 == 0) {
    const int k = n / 2;
    return edge >= k - 1 ? edge - (k - 1) : (k - 1) - edge;
  }
  const int m = n / 2;
  return edge <= m - 1 ? (m - 1) - edge : edge - m;
}

/// Variable names for the squared couplings, central first: A, B, C, ...
inline std::vector<std::string> coupling_letters(int half_dim) {
  if (half_dim > 26)
    throw std::invalid_argument("symbolic coupling letters exhausted (N > 52)");
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(half_dim));
  for (int i = 0; i < half_dim; ++i) names.emplace_back(1, static_cast<char>('A' + i));
  return names;
}

/// Squared couplings (A, B, ...) of a symmetrized spec, central first.
inline std::vector<Rational> squared_couplings_central_first(const ChainSpec& spec) {
  std::vector<Rational> out(spec.couplings.size());
  for (std::size_t i = 0; i < spec.couplings.size(); ++i) {
    const Rational& c = spec.couplings[spec.couplings.size() - 1 - i];
    out[i] = c * c;
  }
  return out;
}

inline TridiagonalMatrix build_chain(const ChainSpec& spec) {
  const int n = spec.dimension;
  if (n < 2) throw std::invalid_argument("chain dimension must be at least 2");
  TridiagonalMatrix t;
  switch (spec.family) {
    case ChainFamily::GeneralPT: {
      if (static_cast<int>(spec.couplings.size()) != n - 1)
        throw std::invalid_argument("GeneralPT expects N-1 couplings");
      for (int k = 0; k < n; ++k) t.diag.emplace_back(2 * k + 1);
      t.super = spec.couplings;
      for (const auto& c : spec.couplings) t.sub.push_back(-c);
      break;
    }
    case ChainFamily::Symmetrized: {
      if (static_cast<int>(spec.couplings.size()) != half_dimension(n))
        throw std::invalid_argument("Symmetrized expects floor(N/2) couplings");
      for (int k = 0; k < n; ++k) t.diag.emplace_back(n - 1 - 2 * k);
      const int h = half_dimension(n);
      for (int e = 0; e < n - 1; ++e) {
        const int letter = symmetrized_letter_of_edge(n, e);
        // storage is outermost-first: letter h-1 sits at index 0
        const Rational& c = spec.couplings[static_cast<std::size_t>(h - 1 - letter)];
        t.super.push_back(c);
        t.sub.push_back(-c);
      }
      break;
    }
    case ChainFamily::GeneralTridiagonal: {
      if (static_cast<int>(spec.diag.size()) != n ||
          static_cast<int>(spec.super.size()) != n - 1 ||
          static_cast<int>(spec.sub.size()) != n - 1)
        throw std::invalid_argument("GeneralTridiagonal expects diag of length N and off-diagonals of length N-1");
      t.diag = spec.diag;
      t.super = spec.super;
      t.sub = spec.sub;
      break;
    }
  }
  return t;
}

namespace detail {

/// det(T - E*I) for a tridiagonal T by the three-term recurrence
///   D_0 = 1,  D_1 = d_1 - E,  D_k = (d_k - E) D_{k-1} - sub*super D_{k-2},
/// run over an arbitrary exact coefficient ring C. Returns the dense
/// E-coefficients of D_N, degree 0 first. `off_products` holds the
/// sub*super products (equal to -a_k^2 for the PT families).
template <typename C>
std::vector<C> tridiag_char_poly(const std::vector<C>& diag,
                                 const std::vector<C>& off_products,
                                 const C& zero, const C& one) {
  const std::size_t n = diag.size();
  if (n == 0) return {one};
  if (off_products.size() + 1 != n)
    throw std::invalid_argument("off-diagonal product list must have length N-1");
  std::vector<C> prev{one};                 // D_0
  std::vector<C> cur{diag[0], zero - one};  // D_1
  for (std::size_t k = 2; k <= n; ++k) {
    std::vector<C> next(k + 1, zero);
    const C& d = diag[k - 1];
    const C& off = off_products[k - 2];
    for (std::size_t j = 0; j < cur.size(); ++j) {
      next[j] = next[j] + d * cur[j];
      next[j + 1] = next[j + 1] - cur[j];
    }
    for (std::size_t j = 0; j < prev.size(); ++j)
      next[j] = next[j] - off * prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace detail

/// Exact characteristic polynomial det(T - E*I) in the variable E.
inline UniPoly char_poly(const TridiagonalMatrix& t) {
  std::vector<Rational> off(t.super.size());
  for (std::size_t k = 0; k < t.super.size(); ++k) off[k] = t.sub[k] * t.super[k];
  auto coeffs = detail::tridiag_char_poly<Rational>(t.diag, off, Rational(0), Rational(1));
  return UniPoly("E", std::move(coeffs));
}

enum class SecularParity { Even, OddTimesE };

/// Characteristic polynomial of a symmetrized chain reduced to the
/// monic polynomial in s = E^2. For odd N the ever-present E factor is
/// removed before the substitution.
struct SecularForm {
  UniPoly charPolyE;    // normalized so sPoly below is monic
  SecularParity parity = SecularParity::Even;
  UniPoly sPoly;        // monic, degree sDegree, variable "s"
  int sDegree = 0;
};

namespace detail {

/// Shared parity split + s-substitution, from dense E-coefficients.
inline SecularForm secular_from_char_coeffs(int n, std::vector<Rational> ce) {
  UniPoly charE("E", std::move(ce));
  if (charE.lead() < 0) charE = -charE;  // fix the s-form leading sign
  SecularForm form;
  form.parity = (n % 2 == 0) ? SecularParity::Even : SecularParity::OddTimesE;
  const int low = (n % 2 == 0) ? 1 : 0;
  for (int k = low; k <= charE.degree(); k += 2) {
    if (charE.coeff(k) != 0)
      throw std::logic_error("secular parity violation: stray E^" + std::to_string(k) +
                             " coefficient in a symmetrized chain");
  }
  std::vector<Rational> sc;
  for (int k = (n % 2 == 0) ? 0 : 1; k <= charE.degree(); k += 2)
    sc.push_back(charE.coeff(k));
  UniPoly spoly("s", std::move(sc));
  spoly = spoly.monic();
  form.charPolyE = std::move(charE);
  form.sPoly = std::move(spoly);
  form.sDegree = half_dimension(n);
  return form;
}

}  // namespace detail

/// Secular form directly from exact squared couplings (A, B, ...),
/// central first. This is the evaluation path used everywhere squared
/// inputs are accepted; only the squares enter the determinant.
inline SecularForm secular_from_squared(int n, const std::vector<Rational>& squared_central_first) {
  if (n < 2) throw std::invalid_argument("chain dimension must be at least 2");
  if (static_cast<int>(squared_central_first.size()) != half_dimension(n))
    throw std::invalid_argument("expected floor(N/2) squared couplings");
  std::vector<Rational> diag(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) diag[static_cast<std::size_t>(k)] = Rational(n - 1 - 2 * k);
  std::vector<Rational> off(static_cast<std::size_t>(n - 1));
  for (int e = 0; e < n - 1; ++e)
    off[static_cast<std::size_t>(e)] =
        -squared_central_first[static_cast<std::size_t>(symmetrized_letter_of_edge(n, e))];
  auto ce = detail::tridiag_char_poly<Rational>(diag, off, Rational(0), Rational(1));
  return detail::secular_from_char_coeffs(n, std::move(ce));
}

/// Monic secular polynomial in s = E^2 of a symmetrized chain spec.
inline SecularForm secular_in_s(const ChainSpec& spec) {
  if (spec.family != ChainFamily::Symmetrized)
    throw std::invalid_argument("secular_in_s requires the Symmetrized family");
  return secular_from_squared(spec.dimension, squared_couplings_central_first(spec));
}

/// Coefficients [P_{d-1}, ..., P_0] of the monic secular polynomial
///   s^d + P_{d-1}(A,B,...) s^{d-1} + ... + P_0(A,B,...)
/// as exact integer polynomials in the squared couplings, central first.
/// Runs the same determinant recurrence with the couplings symbolic.
inline std::vector<MultiPoly> symbolic_secular_coeffs(int n) {
  if (n < 2) throw std::invalid_argument("chain dimension must be at least 2");
  const int h = half_dimension(n);
  const auto vars = coupling_letters(h);
  const MultiPoly zero(vars);
  const MultiPoly one = MultiPoly::constant(vars, 1);
  std::vector<MultiPoly> diag;
  diag.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) diag.push_back(MultiPoly::constant(vars, n - 1 - 2 * k));
  std::vector<MultiPoly> off;
  off.reserve(static_cast<std::size_t>(n - 1));
  for (int e = 0; e < n - 1; ++e)
    off.push_back(-MultiPoly::variable(vars, vars[static_cast<std::size_t>(symmetrized_letter_of_edge(n, e))]));
  auto ce = detail::tridiag_char_poly<MultiPoly>(diag, off, zero, one);

  // Normalize and split exactly as the numeric path does.
  const MultiPoly lead = ce.back();
  if (!(lead == one) && !(lead == -one))
    throw std::logic_error("characteristic polynomial leading coefficient is not a unit");
  if (lead == -one)
    for (auto& c : ce) c = -c;
  const int low = (n % 2 == 0) ? 1 : 0;
  for (int k = low; k < static_cast<int>(ce.size()); k += 2)
    if (!ce[static_cast<std::size_t>(k)].is_zero())
      throw std::logic_error("secular parity violation in symbolic path");
  std::vector<MultiPoly> out;
  out.reserve(static_cast<std::size_t>(h));
  // order: P_{d-1} first, constant term P_0 last
  for (int j = h - 1; j >= 0; --j)
    out.push_back(ce[static_cast<std::size_t>((n % 2 == 0) ? 2 * j : 2 * j + 1)]);
  return out;
}

}  // namespace ptchain
