#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "ptchain/rational.hpp"
#include "ptchain/unipoly.hpp"

namespace ptchain {

/// Distinct-root part p / gcd(p, p'), returned primitive with positive
/// leading coefficient. Throws on the zero polynomial.
inline UniPoly squarefree_part(const UniPoly& p) {
  if (p.is_zero())
    throw std::invalid_argument("squarefree_part of the zero polynomial");
  if (p.degree() == 0) return p.primitive_part();
  const UniPoly g = poly_gcd(p, p.derivative());
  return divrem(p, g).first.primitive_part();
}

/// Classical Sturm sequence: p, p', then negated Euclidean remainders.
/// Every element is rescaled by a positive rational to primitive integer
/// coefficients, which keeps signs intact while bounding coefficient
/// growth.
class SturmChain {
 public:
  explicit SturmChain(const UniPoly& p) {
    seq_.push_back(p.scaled_primitive());
    if (p.degree() >= 1) {
      seq_.push_back(p.derivative().scaled_primitive());
      while (seq_.back().degree() > 0) {
        UniPoly r = -divrem(seq_[seq_.size() - 2], seq_.back()).second;
        if (r.is_zero()) break;  // gcd reached (non-squarefree input)
        seq_.push_back(r.scaled_primitive());
      }
    }
  }

  const std::vector<UniPoly>& sequence() const { return seq_; }

  int variations_at(const Rational& x) const {
    int prev = 0, count = 0;
    for (const auto& q : seq_) step(sign_of(q.eval(x)), prev, count);
    return count;
  }

  int variations_at_pos_inf() const {
    int prev = 0, count = 0;
    for (const auto& q : seq_) step(sign_of(q.lead()), prev, count);
    return count;
  }

  int variations_at_neg_inf() const {
    int prev = 0, count = 0;
    for (const auto& q : seq_) {
      int s = sign_of(q.lead());
      if (q.degree() % 2 != 0) s = -s;
      step(s, prev, count);
    }
    return count;
  }

 private:
  static void step(int s, int& prev, int& count) {
    if (s == 0) return;  // zeros drop out of the sign sequence
    if (prev != 0 && s != prev) ++count;
    prev = s;
  }

  std::vector<UniPoly> seq_;
};

/// Exact number of distinct real roots of the squarefree polynomial p in
/// (lo, hi]; a std::nullopt bound means -inf / +inf respectively. Rejects
/// non-squarefree input.
inline int sturm_count(const UniPoly& p, const std::optional<Rational>& lo,
                       const std::optional<Rational>& hi) {
  if (p.is_zero())
    throw std::invalid_argument("sturm_count of the zero polynomial");
  if (p.degree() >= 1 && poly_gcd(p, p.derivative()).degree() > 0)
    throw std::invalid_argument("sturm_count requires a squarefree polynomial");
  if (lo && hi && *lo >= *hi) return 0;
  const SturmChain chain(p);
  const int vlo = lo ? chain.variations_at(*lo) : chain.variations_at_neg_inf();
  const int vhi = hi ? chain.variations_at(*hi) : chain.variations_at_pos_inf();
  return vlo - vhi;
}

/// Distinct real roots on the whole line.
inline int sturm_count_all(const UniPoly& p) {
  return sturm_count(p, std::nullopt, std::nullopt);
}

}  // namespace ptchain
