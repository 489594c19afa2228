// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Each check pins its tolerance in place; everything else
// is exact integer/rational arithmetic.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ptchain/chain.hpp"
#include "ptchain/domain.hpp"
#include "ptchain/eep.hpp"
#include "ptchain/metric.hpp"
#include "ptchain/realroots.hpp"

using namespace ptchain;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& label, const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string failure;
  try {
    body();
  } catch (const std::exception& e) {
    failure = e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (failure.empty()) {
    std::printf("PASS  %2d. %s  (%.2fs)\n", number, label.c_str(), seconds);
  } else {
    ++g_failures;
    std::printf("FAIL  %2d. %s  (%.2fs)\n          %s\n", number, label.c_str(), seconds,
                failure.c_str());
  }
  std::fflush(stdout);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

ChainSpec sym(int n, std::vector<Rational> couplings_outermost_first) {
  ChainSpec s;
  s.family = ChainFamily::Symmetrized;
  s.dimension = n;
  s.couplings = std::move(couplings_outermost_first);
  return s;
}

// ---------------------------------------------------------------------------

void c1_direct_insertion() {
  for (int n = 2; n <= 40; ++n) {
    const auto report = verify_eep(n);
    for (std::size_t j = 0; j < report.insertionZeros.size(); ++j)
      require(report.insertionZeros[j] == 0,
              "nonzero insertion residual P_j at N=" + std::to_string(n));
    require(report.degeneracyConfirmed,
            "secular polynomial did not collapse to s^d at N=" + std::to_string(n));
  }
  // the insertion path is the secular recurrence itself; pin it to the
  // materialized symbolic coefficients where those are affordable
  for (int n = 2; n <= 12; ++n) {
    const auto coeffs = symbolic_secular_coeffs(n);
    const auto letters = coupling_letters(half_dimension(n));
    const auto sol = eep_closed_form(n);
    std::map<std::string, Rational> point;
    for (std::size_t i = 0; i < letters.size(); ++i)
      point[letters[i]] = Rational(sol.squaredCouplings[i]);
    for (const auto& p : coeffs)
      require(p.eval(point) == 0,
              "symbolic coefficient nonzero at the EEP, N=" + std::to_string(n));
  }
}

void c2_named_tuples() {
  const std::map<int, std::vector<long>> expected = {
      {4, {4, 3}},           {6, {9, 8, 5}},      {8, {16, 15, 12, 7}},
      {5, {6, 4}},           {7, {12, 10, 6}},    {9, {20, 18, 14, 8}}};
  for (const auto& [n, tuple] : expected) {
    const auto sol = eep_closed_form(n);
    require(sol.squaredCouplings == std::vector<Int>(tuple.begin(), tuple.end()),
            "closed-form tuple mismatch at N=" + std::to_string(n));
  }
}

void c3_circumscribed_identities() {
  for (int n = 2; n <= 40; ++n) {
    const auto sol = eep_closed_form(n);
    std::vector<Rational> squared(sol.squaredCouplings.begin(), sol.squaredCouplings.end());
    require(coupling_norm_squared(n, squared) == sol.boundValue,
            "norm identity failed at N=" + std::to_string(n));
    if (n % 2 == 0) {
      const long k = n / 2;
      require(sol.boundValue == Rational(4 * k * k * k - k, 3), "even bound formula");
    } else {
      const long m = n / 2;
      require(sol.boundValue == Rational(2 * m * m * m + 3 * m * m + m, 3), "odd bound formula");
    }
  }
  require(eep_closed_form(4).boundValue == 10, "K=2 spot value");
  require(eep_closed_form(6).boundValue == 35, "K=3 spot value");
  require(eep_closed_form(5).boundValue == 10, "M=2 spot value");
  // K=4 simplex face: P_3 = A + 2B + 2C + 2D - 84
  const auto p8 = symbolic_secular_coeffs(8);
  const auto vars = coupling_letters(4);
  MultiPoly expected = MultiPoly::constant(vars, -84) + MultiPoly::variable(vars, "A");
  for (const char* v : {"B", "C", "D"})
    expected = expected + Int(2) * MultiPoly::variable(vars, v);
  require(p8[0] == expected, "K=4 simplex constraint");
}

void check_elimination(int n, const UniPoly& expected_eliminant,
                       const std::vector<long>& kept,
                       const std::vector<long>& spurious_tuple) {
  const auto e = eliminate_eep_system(n);
  if (!expected_eliminant.is_zero())
    require(e.polynomial == expected_eliminant, "eliminant mismatch at N=" + std::to_string(n));
  int survivors = 0;
  bool spurious_found = spurious_tuple.empty();
  for (const auto& b : e.reconstructedSolutions) {
    if (b.survived) {
      ++survivors;
      for (std::size_t i = 0; i < kept.size(); ++i)
        require(b.values[i].second == kept[i], "kept branch mismatch");
    } else if (!spurious_tuple.empty() && b.allExact &&
               b.values.size() == spurious_tuple.size()) {
      bool same = true;
      for (std::size_t i = 0; i < spurious_tuple.size(); ++i)
        same = same && b.values[i].second == spurious_tuple[i];
      if (same) {
        spurious_found = true;
        require(b.spurious, "spurious branch not flagged");
      }
    }
  }
  require(survivors == 1, "expected exactly one survivor");
  require(spurious_found, "expected spurious branch not seen");
  require(e.ok, "elimination self-check failed");
}

void c4_k2_elimination() {
  check_elimination(4, UniPoly("B", {Rational(-81), Rational(24), Rational(1)}),
                    {4, 3}, {64, -27});
}

void c5_m2_elimination() {
  check_elimination(5, UniPoly("B", {Rational(256), Rational(-68), Rational(1)}),
                    {6, 4}, {});
  // the spurious branch: B = 64 forces A = 10 - 64 < 0
  const auto e = eliminate_eep_system(5);
  bool seen = false;
  for (const auto& b : e.reconstructedSolutions)
    if (!b.survived && b.values.size() == 2 && b.values[1].second == 64) {
      seen = true;
      require(b.values[0].second == -54 && b.spurious, "B=64 branch should force A<0");
    }
  require(seen, "B=64 branch missing");
}

void c6_k3_elimination() {
  const auto e = eliminate_eep_system(6);
  require(e.polynomial.eval(Rational(5)) == 0, "eliminant does not vanish at C=5");
  check_elimination(6, UniPoly(), {9, 8, 5}, {});

  // reference cross-check: the known alternative-branch quartic at K=3
  // 416 C^4 + 20909 C^3 + 22505 C^2 + 28734375 C - 48828125
  const UniPoly quartic("C", {Rational(-48828125), Rational(28734375), Rational(22505),
                              Rational(20909), Rational(416)});
  auto roots = isolate_real_roots(squarefree_part(quartic));
  require(roots.size() == 2, "reference quartic should have two real roots");
  for (auto& r : roots) refine_root(quartic, r, Rational(1, Int("10000000000")));
  require(std::abs(roots[0].approx() - (-65.80360706)) <= 1e-6, "C- root value");
  require(std::abs(roots[1].approx() - 1.693394621) <= 1e-6, "C+ root value");

  // both quartic roots appear among the eliminant's roots and are rejected
  for (const auto& target : {-65.80360706, 1.693394621}) {
    bool encountered = false;
    for (const auto& r : e.realRoots) encountered |= std::abs(r.approx() - target) <= 1e-6;
    require(encountered, "quartic root missing from the eliminant");
    bool rejected = false;
    for (const auto& b : e.reconstructedSolutions) {
      if (b.values.empty()) continue;
      const auto& [letter, value] = b.values.back();
      if (letter == "C" && std::abs(to_double(value) - target) <= 1e-6)
        rejected = rejected || (b.spurious && !b.survived);
    }
    require(rejected, "quartic root branch not rejected");
  }
}

void c7_closed_forms_vs_eigensolver() {
  std::mt19937 rng(20260809);
  std::uniform_int_distribution<int> num(-8, 8), den(4, 7);
  for (int n = 2; n <= 5; ++n) {
    int accepted = 0, guard = 0;
    while (accepted < 100 && ++guard < 5000) {
      std::vector<Rational> c;
      for (int i = 0; i < half_dimension(n); ++i) c.emplace_back(num(rng), den(rng));
      const ChainSpec spec = sym(n, c);
      if (classify_point(spec).cls != SpectrumClass::RealSimple) continue;
      const auto closed = closed_form_check(spec);
      double min_gap = 1e30;
      for (std::size_t i = 1; i < closed.energies.size(); ++i)
        min_gap = std::min(min_gap,
                           std::abs(closed.energies[i] - closed.energies[i - 1]));
      if (min_gap < 1e-3) continue;  // interior but nearly defective: QR noise dominates
      ++accepted;
      auto numeric = eigen_numeric(build_chain(spec)).values;
      for (const auto& e : closed.energies) {
        double best = 1e30;
        std::size_t arg = 0;
        for (std::size_t k = 0; k < numeric.size(); ++k) {
          const double d = std::abs(numeric[k] - e);
          if (d < best) { best = d; arg = k; }
        }
        require(best <= 1e-10, "closed form vs eigensolver exceeded 1e-10 at N=" +
                                   std::to_string(n));
        numeric.erase(numeric.begin() + static_cast<long>(arg));
      }
    }
    require(accepted == 100, "could not draw 100 interior points at N=" + std::to_string(n));
  }
}

void c8_membership_grid() {
  const int res = 200;
  for (int i = 0; i < res; ++i) {
    const Rational A = Rational(12 * i, res - 1);
    for (int j = 0; j < res; ++j) {
      const Rational B = Rational(12 * j, res - 1);
      const auto verdict = classify_squared(5, {A, B});
      const Rational l1 = Rational(10) - A - B;
      const Rational l2 = Rational(36) + 12 * A + A * A - 36 * B;
      const Rational l3 = (Rational(8) + B) * (Rational(8) + B) - (Rational(32) - 2 * B) * A;
      SpectrumClass expected;
      if (l1 < 0 || l2 < 0 || l3 < 0)
        expected = SpectrumClass::Complex;
      else if (l1 == 0 || l2 == 0 || l3 == 0)
        expected = SpectrumClass::RealDegenerate;
      else
        expected = SpectrumClass::RealSimple;
      require(verdict.cls == expected,
              "inequality oracle disagrees at A=" + to_string(A) + ", B=" + to_string(B) +
                  " (sturm: " + to_string(verdict.cls) + ")");
    }
  }
}

void c9_boundary_traces() {
  // N=3: single axis, boundary at sqrt(2)
  {
    BoundaryWindow w;
    w.xlo = Rational(0);
    w.xhi = Rational(5, 2);
    const auto curve = trace_boundary(sym(3, {Rational(0)}),
                                      {{AxisRef::Kind::SymmetrizedLetter, 0, "a"}}, w);
    require(curve.points.size() == 1, "N=3 trace should find one boundary point");
    require(std::abs(curve.points[0][0] - std::sqrt(2.0)) <= 1e-9, "N=3 boundary off sqrt(2)");
  }
  // N=4: window trace passes within 1e-6 of the spike tip (2, sqrt 3)
  {
    BoundaryWindow w;
    w.xlo = Rational(0);
    w.xhi = Rational(5, 2);
    w.ylo = Rational(0);
    w.yhi = Rational(5, 2);
    BoundaryOptions opts;
    opts.resolution = 60;
    const auto curve = trace_boundary(sym(4, {Rational(0), Rational(0)}),
                                      {{AxisRef::Kind::SymmetrizedLetter, 0, "a"},
                                       {AxisRef::Kind::SymmetrizedLetter, 1, "b"}},
                                      w, opts);
    double best = 1e30;
    for (const auto& p : curve.points)
      best = std::min(best, std::hypot(p[0] - 2.0, p[1] - std::sqrt(3.0)));
    require(best <= 1e-6, "N=4 trace misses the EEP tip: best distance " + std::to_string(best));
  }
  // N=2 general model: boundary is ab = -1 along 50 rays
  {
    ChainSpec g;
    g.family = ChainFamily::GeneralTridiagonal;
    g.dimension = 2;
    g.diag = {Rational(1), Rational(3)};
    g.super = {Rational(1)};
    g.sub = {Rational(-1)};
    BoundaryWindow w;
    w.xlo = Rational(1, 2);
    w.xhi = Rational(5, 2);
    w.ylo = Rational(-3);
    w.yhi = Rational(-1, 10);
    BoundaryOptions opts;
    opts.resolution = 50;
    opts.tolerance = Rational(1, Int("100000000000"));
    const auto curve = trace_boundary(g,
                                      {{AxisRef::Kind::Super, 0, "a"},
                                       {AxisRef::Kind::Sub, 0, "b"}},
                                      w, opts);
    require(curve.points.size() >= 50, "N=2 trace should emit a point per ray");
    for (const auto& p : curve.points)
      require(std::abs(p[0] * p[1] + 1.0) <= 1e-9, "N=2 boundary violates ab = -1");
  }
}

void c10_metric_verification() {
  std::mt19937 rng(424243);
  std::uniform_int_distribution<int> t8(2, 7), jig(-1, 1);
  std::uniform_real_distribution<double> wdist(0.5, 2.0);
  for (int n : {2, 4, 5, 6, 8}) {
    const auto sol = eep_closed_form(n);
    int accepted = 0, guard = 0;
    while (accepted < 20 && ++guard < 5000) {
      const Rational t(t8(rng), 8);
      ChainSpec spec = sym(n, {});
      for (int i = half_dimension(n) - 1; i >= 0; --i) {
        const double target = std::sqrt(
            to_double(t * Rational(sol.squaredCouplings[static_cast<std::size_t>(i)])));
        spec.couplings.emplace_back(std::lround(target * 32) + jig(rng), 32);
      }
      if (classify_point(spec).cls != SpectrumClass::RealSimple) continue;
      ++accepted;
      const auto tmat = build_chain(spec);
      const auto basis = biorthogonal_decomposition(spec);
      std::vector<double> unit(static_cast<std::size_t>(n), 1.0);
      std::vector<double> random_weights(static_cast<std::size_t>(n));
      for (auto& w : random_weights) w = wdist(rng);
      for (const auto& weights : {unit, random_weights}) {
        const auto metric = build_metric(basis, tmat, weights);
        const double scale = metric.theta.cwiseAbs().maxCoeff();
        require(metric.residual <= 1e-8 * scale,
                "quasi-Hermiticity residual too large at N=" + std::to_string(n));
        require(metric.theta == metric.theta.transpose(), "theta not exactly symmetric");
        require(metric.minEigenvalueEstimate > 0.0, "theta not positive definite");
      }
    }
    require(accepted == 20, "could not draw 20 RealSimple points at N=" + std::to_string(n));
  }
}

void c11_degeneracy_sensitivity() {
  for (int n = 2; n <= 12; ++n) {
    const auto sol = eep_closed_form(n);
    std::vector<Rational> squared(sol.squaredCouplings.begin(), sol.squaredCouplings.end());
    require(classify_squared(n, squared).cls == SpectrumClass::RealDegenerate,
            "EEP not RealDegenerate at N=" + std::to_string(n));
    for (std::size_t i = 0; i < squared.size(); ++i) {
      auto bumped = squared;
      bumped[i] += Rational(1, 100);
      require(classify_squared(n, bumped).cls == SpectrumClass::Complex,
              "EEP not maximal in coordinate " + std::to_string(i) +
                  " at N=" + std::to_string(n));
    }
  }
}

}  // namespace

int main() {
  std::printf("ptchain acceptance suite\n");
  criterion(1, "EEP direct insertion is exact for N = 2..40", c1_direct_insertion);
  criterion(2, "named EEP tuples reproduced exactly", c2_named_tuples);
  criterion(3, "sphere/ellipsoid identities hold exactly for N = 2..40",
            c3_circumscribed_identities);
  criterion(4, "K=2 elimination: (B-3)(B+27), kept (4,3), spurious (64,-27)",
            c4_k2_elimination);
  criterion(5, "M=2 elimination: B^2-68B+256, kept (6,4), spurious B=64",
            c5_m2_elimination);
  criterion(6, "K=3 elimination: C=5 exact, quartic roots rejected", c6_k3_elimination);
  criterion(7, "closed-form spectra match the eigensolver to 1e-10 (100 points x N=2..5)",
            c7_closed_forms_vs_eigensolver);
  criterion(8, "Sturm classifier equals the inequality oracle on the 200x200 grid",
            c8_membership_grid);
  criterion(9, "boundary traces: sqrt(2), the (2, sqrt 3) tip, and ab = -1",
            c9_boundary_traces);
  criterion(10, "metric verification at 20 RealSimple points x N in {2,4,5,6,8}",
            c10_metric_verification);
  criterion(11, "EEP degeneracy flips to Complex under +1/100 in any coordinate",
            c11_degeneracy_sensitivity);
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", g_failures);
  return 1;
}
