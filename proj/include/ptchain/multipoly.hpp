#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ptchain/rational.hpp"
#include "ptchain/unipoly.hpp"

namespace ptchain {

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. All polynomials taking part in one computation share the
/// same ordered variable list; terms map exponent vectors (one entry per
/// variable) to nonzero coefficients.
class MultiPoly {
 public:
  using Exponents = std::vector<unsigned>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MultiPoly constant(std::vector<std::string> vars, Int c) {
    MultiPoly p(std::move(vars));
    if (c != 0) p.terms_[Exponents(p.vars_.size(), 0)] = std::move(c);
    return p;
  }
  static MultiPoly variable(std::vector<std::string> vars,
                            const std::string& name) {
    MultiPoly p(std::move(vars));
    Exponents e(p.vars_.size(), 0);
    e[p.var_index(name)] = 1;
    p.terms_[std::move(e)] = 1;
    return p;
  }
  static MultiPoly monomial(std::vector<std::string> vars, Exponents exps,
                            Int c) {
    MultiPoly p(std::move(vars));
    if (exps.size() != p.vars_.size())
      throw std::invalid_argument("exponent vector length mismatch");
    if (c != 0) p.terms_[std::move(exps)] = std::move(c);
    return p;
  }

  const std::vector<std::string>& variables() const { return vars_; }
  const std::map<Exponents, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first == Exponents(vars_.size(), 0));
  }

  std::size_t var_index(const std::string& name) const {
    const auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end())
      throw std::invalid_argument("unknown variable '" + name + "'");
    return static_cast<std::size_t>(it - vars_.begin());
  }

  /// Variables with a nonzero exponent in some term.
  std::set<std::string> occurring_variables() const {
    std::set<std::string> out;
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0) out.insert(vars_[i]);
    return out;
  }

  int degree_in(const std::string& name) const {
    const std::size_t i = var_index(name);
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[i]));
    return is_zero() ? -1 : d;
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int t = 0;
      for (unsigned x : e) t += static_cast<int>(x);
      d = std::max(d, t);
    }
    return d;
  }

  /// Coefficient of name^k, as a polynomial over the same variable list
  /// (the extracted variable's exponent is zeroed out).
  MultiPoly coeff_of_power(const std::string& name, unsigned k) const {
    const std::size_t i = var_index(name);
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] != k) continue;
      Exponents r = e;
      r[i] = 0;
      out.terms_[std::move(r)] = c;
    }
    return out;
  }

  MultiPoly operator-() const {
    MultiPoly r(*this);
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly r(a);
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly r(a);
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly r(a.vars_);
    Exponents sum;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        sum = ea;
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += eb[i];
        r.add_term(sum, ca * cb);
      }
    }
    return r;
  }
  friend MultiPoly operator*(const Int& s, const MultiPoly& p) {
    if (s == 0) return MultiPoly(p.vars_);
    MultiPoly r(p);
    for (auto& [e, c] : r.terms_) c *= s;
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) {
    return !(a == b);
  }

  /// Exact value at a point. The assignment must cover every occurring
  /// variable; unused variables may be omitted.
  Rational eval(const std::map<std::string, Rational>& point) const {
    std::vector<const Rational*> bound(vars_.size(), nullptr);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const auto it = point.find(vars_[i]);
      if (it != point.end()) bound[i] = &it->second;
    }
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
      Rational term(c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (bound[i] == nullptr)
          throw std::invalid_argument("missing variable '" + vars_[i] +
                                      "' in assignment");
        for (unsigned k = 0; k < e[i]; ++k) term *= *bound[i];
      }
      acc += term;
    }
    return acc;
  }

  /// Collapses to a univariate polynomial in `keep` after assigning exact
  /// values to every other occurring variable.
  UniPoly to_unipoly_in(const std::string& keep,
                        const std::map<std::string, Rational>& point) const {
    const std::size_t ki = var_index(keep);
    std::vector<const Rational*> bound(vars_.size(), nullptr);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const auto it = point.find(vars_[i]);
      if (it != point.end()) bound[i] = &it->second;
    }
    std::vector<Rational> coeffs;
    for (const auto& [e, c] : terms_) {
      Rational term(c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (i == ki || e[i] == 0) continue;
        if (bound[i] == nullptr)
          throw std::invalid_argument("missing variable '" + vars_[i] +
                                      "' in assignment");
        for (unsigned k = 0; k < e[i]; ++k) term *= *bound[i];
      }
      if (coeffs.size() <= e[ki]) coeffs.resize(e[ki] + 1, Rational(0));
      coeffs[e[ki]] += term;
    }
    return UniPoly(keep, std::move(coeffs));
  }

  /// Positive gcd of all coefficients (0 for the zero polynomial).
  Int content() const {
    Int g = 0;
    for (const auto& [e, c] : terms_) g = boost::multiprecision::gcd(g, c);
    return boost::multiprecision::abs(g);
  }

  /// Divides out the integer content and normalizes the lex-leading
  /// coefficient to be positive.
  MultiPoly removed_content() const {
    if (is_zero()) return *this;
    const Int g = content();
    MultiPoly r(vars_);
    const bool flip = terms_.rbegin()->second < 0;
    for (const auto& [e, c] : terms_) r.terms_[e] = flip ? Int(-c / g) : Int(c / g);
    return r;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    // Highest lex term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      const bool first = out.empty();
      const Int mag = boost::multiprecision::abs(c);
      out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) {
        out += mag.str();
      } else {
        if (mag != 1) out += mag.str() + "*";
        out += mono;
      }
    }
    return out;
  }

 private:
  void check_compatible(const MultiPoly& other) const {
    if (vars_ != other.vars_)
      throw std::invalid_argument("mixing polynomials over different variable lists");
  }
  void add_term(const Exponents& e, Int c) {
    if (c == 0) return;
    const auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_[e] = std::move(c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::vector<std::string> vars_;
  std::map<Exponents, Int> terms_;
};

}  // namespace ptchain
