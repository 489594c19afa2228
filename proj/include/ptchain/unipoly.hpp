#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ptchain/rational.hpp"

namespace ptchain {

/// Dense univariate polynomial over exact rationals, coefficients stored
/// from degree 0 upward. The zero polynomial stores no coefficients; any
/// other polynomial has a nonzero leading coefficient.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::string var) : var_(std::move(var)) {}
  UniPoly(std::string var, std::vector<Rational> coeffs)
      : var_(std::move(var)), coeffs_(std::move(coeffs)) {
    trim();
  }

  static UniPoly constant(std::string var, Rational c) {
    return UniPoly(std::move(var), {std::move(c)});
  }
  static UniPoly variable(std::string var) {
    return UniPoly(std::move(var), {Rational(0), Rational(1)});
  }

  const std::string& variable_name() const { return var_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  Rational coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Rational(0);
    return coeffs_[static_cast<std::size_t>(k)];
  }
  Rational lead() const {
    return coeffs_.empty() ? Rational(0) : coeffs_.back();
  }

  Rational eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * x + *it;
    return acc;
  }

  double eval(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * x + to_double(*it);
    return acc;
  }

  UniPoly derivative() const {
    if (coeffs_.size() <= 1) return UniPoly(var_);
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
      d[k - 1] = coeffs_[k] * Rational(static_cast<long>(k));
    return UniPoly(var_, std::move(d));
  }

  UniPoly operator-() const {
    UniPoly r(*this);
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t k = 0; k < c.size(); ++k)
      c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    return UniPoly(a.pick_var(b), std::move(c));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    return a + (-b);
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly(a.pick_var(b));
    std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1,
                            Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return UniPoly(a.pick_var(b), std::move(c));
  }
  friend UniPoly operator*(const Rational& s, const UniPoly& p) {
    if (s == 0) return UniPoly(p.var_);
    UniPoly r(p);
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) {
    return !(a == b);
  }

  /// Euclidean division; the divisor must be nonzero.
  friend std::pair<UniPoly, UniPoly> divrem(const UniPoly& a,
                                            const UniPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
    UniPoly q(a.pick_var(b));
    UniPoly r(a);
    const Rational blead = b.lead();
    const int bd = b.degree();
    while (!r.is_zero() && r.degree() >= bd) {
      const int shift = r.degree() - bd;
      const Rational factor = r.lead() / blead;
      std::vector<Rational> qc(static_cast<std::size_t>(shift) + 1, Rational(0));
      qc.back() = factor;
      const UniPoly term(a.pick_var(b), std::move(qc));
      q = q + term;
      r = r - term * b;
    }
    return {q, r};
  }

  /// Content: positive rational c with p/c integer-coefficient and
  /// coefficient gcd 1. Zero for the zero polynomial.
  Rational content() const {
    if (is_zero()) return Rational(0);
    Int num_gcd = 0;
    Int den_lcm = 1;
    for (const auto& c : coeffs_) {
      if (c == 0) continue;
      num_gcd = boost::multiprecision::gcd(num_gcd, numerator(c));
      den_lcm = boost::multiprecision::lcm(den_lcm, denominator(c));
    }
    return Rational(boost::multiprecision::abs(num_gcd), den_lcm);
  }

  /// p scaled by a positive rational so the coefficients are integers with
  /// gcd 1. Preserves the sign of every coefficient.
  UniPoly scaled_primitive() const {
    if (is_zero()) return *this;
    return (Rational(1) / content()) * *this;
  }

  /// Primitive with positive leading coefficient (canonical associate).
  UniPoly primitive_part() const {
    UniPoly p = scaled_primitive();
    if (!p.is_zero() && p.lead() < 0) p = -p;
    return p;
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    return (Rational(1) / lead()) * *this;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      const Rational c = coeff(k);
      if (c == 0) continue;
      const bool first = out.empty();
      Rational mag = c < 0 ? -c : c;
      out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
      const bool unit = (mag == 1) && k > 0;
      if (!unit) out += ptchain::to_string(mag);
      if (k > 0) {
        if (!unit) out += "*";
        out += var_;
        if (k > 1) out += "^" + std::to_string(k);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  // Keeps a nonempty variable name when mixing with default-constructed
  // temporaries.
  std::string pick_var(const UniPoly& other) const {
    return var_.empty() ? other.var_ : var_;
  }

  std::string var_ = "x";
  std::vector<Rational> coeffs_;
};

/// gcd as a primitive polynomial with positive leading coefficient
/// (constant 1 for coprime inputs, zero only if both inputs are zero).
inline UniPoly poly_gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = divrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.primitive_part();
}

}  // namespace ptchain
