#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "ptchain/rational.hpp"
#include "ptchain/sturm.hpp"
#include "ptchain/unipoly.hpp"

namespace ptchain {

/// One isolated real root: either an exact rational value, or an open
/// interval (lo, hi) with nonzero endpoint values containing exactly one
/// root.
struct RealRootInterval {
  Rational lo, hi;
  std::optional<Rational> exact;

  double approx() const {
    return exact ? to_double(*exact) : to_double((lo + hi) / 2);
  }
  /// -1, 0 or +1; 0 only for the exact root zero (intervals are refined
  /// until they do not straddle zero).
  int sign() const {
    if (exact) return sign_of(*exact);
    return lo >= 0 ? 1 : -1;
  }
};

inline Int floor_rational(const Rational& r) {
  Int q = numerator(r) / denominator(r);
  if (r < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

namespace detail {

inline Rational cauchy_root_bound(const UniPoly& p) {
  Rational m(0);
  const Rational lead = p.lead() < 0 ? -p.lead() : p.lead();
  for (int k = 0; k < p.degree(); ++k) {
    Rational a = p.coeff(k);
    if (a < 0) a = -a;
    a /= lead;
    if (a > m) m = a;
  }
  return m + 1;
}

}  // namespace detail

/// Sign-based bisection of an isolated root down to the requested interval
/// width. Exact hits (dyadic midpoints and integers inside the interval)
/// are promoted to exact roots.
inline void refine_root(const UniPoly& g, RealRootInterval& root, const Rational& width) {
  if (root.exact) return;
  int slo = sign_of(g.eval(root.lo));
  while (root.hi - root.lo > width) {
    // promote integer hits as soon as at most one integer can be inside
    if (root.hi - root.lo < 1) {
      const Rational n(floor_rational(root.hi));
      if (n > root.lo && n < root.hi && g.eval(n) == 0) {
        root.exact = n;
        root.lo = root.hi = n;
        return;
      }
    }
    const Rational mid = (root.lo + root.hi) / 2;
    const int smid = sign_of(g.eval(mid));
    if (smid == 0) {
      root.exact = mid;
      root.lo = root.hi = mid;
      return;
    }
    if (smid == slo) {
      root.lo = mid;
      slo = smid;
    } else {
      root.hi = mid;
    }
  }
}

/// Isolates all distinct real roots of a squarefree polynomial into
/// disjoint intervals (exact rational roots discovered along the way are
/// returned as such). Roots are ordered increasingly. Intervals are
/// refined until they no longer straddle zero, so sign() is decided.
inline std::vector<RealRootInterval> isolate_real_roots(const UniPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("isolate_real_roots of the zero polynomial");
  if (p.degree() >= 1 && poly_gcd(p, p.derivative()).degree() > 0)
    throw std::invalid_argument("isolate_real_roots requires a squarefree polynomial");
  std::vector<RealRootInterval> out;
  if (p.degree() < 1) return out;

  const SturmChain chain(p);
  const auto count_open = [&](const Rational& lo, const Rational& hi) {
    // open interval with nonzero endpoint values
    return chain.variations_at(lo) - chain.variations_at(hi);
  };

  const Rational bound = detail::cauchy_root_bound(p);
  struct Item { Rational lo, hi; int count; };
  std::vector<Item> stack;
  {
    const Rational lo = -bound, hi = bound;
    const int total = count_open(lo, hi);
    if (total > 0) stack.push_back({lo, hi, total});
  }
  while (!stack.empty()) {
    Item item = stack.back();
    stack.pop_back();
    if (item.count == 1) {
      RealRootInterval root{item.lo, item.hi, std::nullopt};
      // decide the sign: shrink until the interval is clear of zero
      while (!root.exact && root.lo < 0 && root.hi > 0)
        refine_root(p, root, (root.hi - root.lo) / 4);
      out.push_back(std::move(root));
      continue;
    }
    // split at a non-root point; exact hits become roots of their own
    Rational mid = (item.lo + item.hi) / 2;
    Rational step = (item.hi - item.lo) / 4;
    while (p.eval(mid) == 0) {
      // found an exact root right at the split point: emit it and fence it
      // off with non-root endpoints on both sides
      Rational delta = step;
      while (p.eval(mid - delta) == 0 || p.eval(mid + delta) == 0 ||
             count_open(mid - delta, mid + delta) != 1)
        delta /= 2;
      out.push_back({mid, mid, mid});
      const int left = count_open(item.lo, mid - delta);
      const int right = count_open(mid + delta, item.hi);
      if (left > 0) stack.push_back({item.lo, Rational(mid - delta), left});
      if (right > 0) stack.push_back({Rational(mid + delta), item.hi, right});
      mid = item.lo - 1;  // sentinel: handled by the fenced pushes
      break;
    }
    if (mid < item.lo) continue;  // split handled above
    const int left = count_open(item.lo, mid);
    const int right = item.count - left;
    if (left > 0) stack.push_back({item.lo, mid, left});
    if (right > 0) stack.push_back({mid, item.hi, right});
  }

  std::sort(out.begin(), out.end(), [](const RealRootInterval& a, const RealRootInterval& b) {
    return (a.exact ? *a.exact : a.lo) < (b.exact ? *b.exact : b.lo);
  });
  return out;
}

}  // namespace ptchain
