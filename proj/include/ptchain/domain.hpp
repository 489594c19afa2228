#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ptchain/chain.hpp"
#include "ptchain/eep.hpp"
#include "ptchain/metric.hpp"
#include "ptchain/parallel.hpp"
#include "ptchain/rational.hpp"
#include "ptchain/sturm.hpp"
#include "ptchain/unipoly.hpp"

namespace ptchain {

enum class SpectrumClass { RealSimple, RealDegenerate, Complex };

inline const char* to_string(SpectrumClass c) {
  switch (c) {
    case SpectrumClass::RealSimple: return "RealSimple";
    case SpectrumClass::RealDegenerate: return "RealDegenerate";
    case SpectrumClass::Complex: return "Complex";
  }
  return "?";
}

/// Exact classification of a coupling point against the quasi-Hermiticity
/// domain. RealSimple and RealDegenerate together form the closure of D;
/// RealDegenerate marks the exceptional-point boundary situations (a
/// repeated s-root, or an s-root at zero).
struct MembershipVerdict {
  SpectrumClass cls = SpectrumClass::Complex;
  int realRootCountS = -1;  // distinct real roots of the squarefree sPoly in [0, inf); -1 on the numeric path
  UniPoly certificate;      // the exact polynomial that was classified
  bool exactPath = true;

  bool in_closure() const { return cls != SpectrumClass::Complex; }
};

/// Exact Sturm-based classification from squared couplings (A, B, ...),
/// central first. Only squares of the couplings enter the spectrum, so
/// this is the canonical entry; negative squared couplings are rejected.
inline MembershipVerdict classify_squared(int n, const std::vector<Rational>& squared) {
  for (const auto& s : squared)
    if (s < 0)
      throw std::invalid_argument("squared couplings must be nonnegative");
  const SecularForm form = secular_from_squared(n, squared);
  const UniPoly& sp = form.sPoly;

  MembershipVerdict v;
  v.certificate = sp;
  const UniPoly sf = squarefree_part(sp);
  const int distinct = sf.degree();
  const int distinct_real = sturm_count_all(sf);
  const int distinct_pos = sturm_count(sf, Rational(0), std::nullopt);
  const bool zero_root = sp.eval(Rational(0)) == 0;
  v.realRootCountS = distinct_pos + (zero_root ? 1 : 0);

  if (distinct_real < distinct) {
    v.cls = SpectrumClass::Complex;  // some s is non-real
  } else if (distinct_real - distinct_pos - (zero_root ? 1 : 0) > 0) {
    v.cls = SpectrumClass::Complex;  // some s is negative: imaginary energy pair
  } else if (distinct < sp.degree() || zero_root) {
    v.cls = SpectrumClass::RealDegenerate;
  } else {
    v.cls = SpectrumClass::RealSimple;
  }
  return v;
}

/// Membership classification of a chain spec. Symmetrized specs take the
/// exact path; the other families fall back to the numeric eigensolver
/// with an imaginary-part / spacing threshold of 1e-8 * scale.
inline MembershipVerdict classify_point(const ChainSpec& spec) {
  if (spec.family == ChainFamily::Symmetrized)
    return classify_squared(spec.dimension, squared_couplings_central_first(spec));

  const TridiagonalMatrix t = build_chain(spec);
  MembershipVerdict v;
  v.exactPath = false;
  v.certificate = char_poly(t);
  const auto eig = eigen_numeric(t);
  double scale = 1.0;
  for (const auto& d : t.diag) scale = std::max(scale, std::abs(to_double(d)));
  for (const auto& c : t.super) scale = std::max(scale, std::abs(to_double(c)));
  for (const auto& c : t.sub) scale = std::max(scale, std::abs(to_double(c)));
  const double tol = 1e-8 * scale;
  double max_imag = 0.0;
  std::vector<double> re;
  for (const auto& z : eig.values) {
    max_imag = std::max(max_imag, std::abs(z.imag()));
    re.push_back(z.real());
  }
  std::sort(re.begin(), re.end());
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < re.size(); ++i) min_gap = std::min(min_gap, re[i] - re[i - 1]);
  if (max_imag > tol)
    v.cls = SpectrumClass::Complex;
  else if (min_gap < tol)
    v.cls = SpectrumClass::RealDegenerate;
  else
    v.cls = SpectrumClass::RealSimple;
  return v;
}

/// Exact-path biorthogonal decomposition gate: refuses anything but a
/// RealSimple verdict and carries the verdict along with the refusal.
struct DecompositionRefusedWithVerdict : DecompositionRefused {
  MembershipVerdict verdict;
  DecompositionRefusedWithVerdict(const std::string& why, MembershipVerdict v)
      : DecompositionRefused(why), verdict(std::move(v)) {}
};

inline BiorthogonalBasis biorthogonal_decomposition(const ChainSpec& spec) {
  MembershipVerdict v = classify_point(spec);
  if (v.cls != SpectrumClass::RealSimple)
    throw DecompositionRefusedWithVerdict(
        std::string("biorthogonal basis requires a RealSimple point, got ") +
            to_string(v.cls),
        std::move(v));
  return biorthogonal_decomposition(build_chain(spec));
}

/// Spectrum by the closed formulas available at N <= 5, plus the
/// membership booleans they imply. For N = 5 the three inequality
/// indicators (simplex, parabola, hyperbola) are populated.
struct ClosedFormResult {
  std::vector<std::complex<double>> energies;  // ascending by real part
  bool allReal = false;
  std::array<bool, 3> inequalities{true, true, true};
  std::array<bool, 3> saturated{false, false, false};
};

/// Closed-form spectra for the symmetrized chains with N in {2,3,4,5},
/// evaluated from squared couplings (A[, B]) in floating point.
inline ClosedFormResult closed_form_squared(int n, const std::vector<double>& squared) {
  ClosedFormResult out;
  const auto push_pair = [&](std::complex<double> s) {
    const std::complex<double> e = std::sqrt(s);
    out.energies.push_back(-e);
    out.energies.push_back(e);
  };
  switch (n) {
    case 2: {
      const double A = squared.at(0);
      push_pair({1.0 - A, 0.0});
      out.allReal = A <= 1.0;
      break;
    }
    case 3: {
      const double A = squared.at(0);
      out.energies.push_back(0.0);
      push_pair({4.0 - 2.0 * A, 0.0});
      out.allReal = 4.0 - 2.0 * A >= 0.0;
      break;
    }
    case 4: {
      const double A = squared.at(0), B = squared.at(1);
      const double rad = 64.0 - 64.0 * B + 16.0 * A + 4.0 * B * A + A * A;
      const std::complex<double> root = std::sqrt(std::complex<double>(rad, 0.0));
      const std::complex<double> base = 5.0 - B - 0.5 * A;
      push_pair(base + 0.5 * root);
      push_pair(base - 0.5 * root);
      out.allReal = rad >= 0.0 && base.real() - 0.5 * std::sqrt(std::max(rad, 0.0)) >= 0.0;
      break;
    }
    case 5: {
      const double A = squared.at(0), B = squared.at(1);
      const double rad = 36.0 + 12.0 * A + A * A - 36.0 * B;
      const std::complex<double> root = std::sqrt(std::complex<double>(rad, 0.0));
      const std::complex<double> base = 10.0 - A - B;
      out.energies.push_back(0.0);
      push_pair(base - root);  // E_{+-1}
      push_pair(base + root);  // E_{+-2}
      const double lhs1 = 10.0 - (A + B);
      const double lhs2 = 36.0 + 12.0 * A + A * A - 36.0 * B;
      const double lhs3 = (8.0 + B) * (8.0 + B) - (32.0 - 2.0 * B) * A;
      out.inequalities = {lhs1 >= 0.0, lhs2 >= 0.0, lhs3 >= 0.0};
      out.saturated = {lhs1 == 0.0, lhs2 == 0.0, lhs3 == 0.0};
      out.allReal = out.inequalities[0] && out.inequalities[1] && out.inequalities[2];
      break;
    }
    default:
      throw std::invalid_argument("closed forms are available for N in {2,3,4,5}");
  }
  std::sort(out.energies.begin(), out.energies.end(),
            [](const std::complex<double>& x, const std::complex<double>& y) {
              return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
            });
  return out;
}

inline ClosedFormResult closed_form_check(const ChainSpec& spec) {
  if (spec.family != ChainFamily::Symmetrized)
    throw std::invalid_argument("closed forms cover the Symmetrized family");
  std::vector<double> squared;
  for (const auto& s : squared_couplings_central_first(spec))
    squared.push_back(to_double(s));
  return closed_form_squared(spec.dimension, squared);
}

/// One coordinate that a boundary trace varies: either a symmetrized
/// coupling letter (0 = central "a"), probed in plain units and squared
/// exactly for classification, or a raw super-/sub-diagonal entry of a
/// general tridiagonal template.
struct AxisRef {
  enum class Kind { SymmetrizedLetter, Super, Sub } kind = Kind::SymmetrizedLetter;
  int index = 0;
  std::string label = "a";
};

struct BoundaryWindow {
  Rational xlo, xhi;  // first axis range
  Rational ylo, yhi;  // second axis range (ignored for 1-axis traces)
};

struct BoundaryOptions {
  int resolution = 100;            // probes per ray and number of rays
  Rational tolerance = Rational(1, 1000000000);  // bisection width on the varied coordinate
  // Aim one extra radial ray at the known extreme-exceptional-point
  // direction of the varied coupling plane. The spike of the boundary is
  // pinched quadratically, so grid rays cannot resolve its tip at any
  // affordable resolution; the closed-form direction can.
  bool includeExtremeRay = true;
  // Exact squared values for non-varied symmetrized letters (letter index
  // -> value), overriding the squares of the base spec's couplings. This
  // admits fixed values like B = 3 whose plain coupling is irrational.
  std::vector<std::pair<int, Rational>> fixedSquared;
};

/// Boundary points of the quasi-Hermiticity domain in a coordinate plane.
/// Every emitted point is the midpoint of a bracket [inside, outside] (or
/// the reverse) no wider than the bisection tolerance.
struct BoundaryCurve {
  int N = 0;
  std::vector<AxisRef> axes;          // one or two
  std::vector<std::pair<std::string, Rational>> fixedSquared;  // remaining symmetrized letters
  std::vector<std::array<double, 2>> points;  // (x, y); y = 0 for 1-axis traces
  int resolution = 0;
  double tolerance = 0.0;
  bool windowUniform = false;  // no verdict change seen anywhere in the window
};

namespace detail {

/// Probe template shared by all rays of one trace: a spec fixed up to the
/// axis coordinates.
struct BoundaryProbe {
  const ChainSpec& base;
  const std::vector<AxisRef>& axes;
  // squared values for every symmetrized letter; axis letters overwritten per probe
  std::vector<Rational> squared;

  bool inside(const std::vector<Rational>& coords) {
    if (base.family == ChainFamily::Symmetrized) {
      std::vector<Rational> sq(coords.size());
      for (std::size_t k = 0; k < coords.size(); ++k) sq[k] = coords[k] * coords[k];
      return inside_squared(sq);
    }
    ChainSpec probe = base;
    for (std::size_t k = 0; k < axes.size(); ++k) {
      auto& list = axes[k].kind == AxisRef::Kind::Super ? probe.super : probe.sub;
      list.at(static_cast<std::size_t>(axes[k].index)) = coords[k];
    }
    return classify_point(probe).in_closure();
  }

  // squared values for the varied letters, in axis order
  bool inside_squared(const std::vector<Rational>& squared_coords) {
    for (std::size_t k = 0; k < axes.size(); ++k)
      squared[static_cast<std::size_t>(axes[k].index)] = squared_coords[k];
    return classify_squared(base.dimension, squared).in_closure();
  }
};

}  // namespace detail

/// Scans rays across the window (second axis varied along each ray for
/// two-axis traces), bisecting every verdict change down to the
/// configured tolerance. Probe coordinates stay exact dyadic rationals,
/// so the exact classifier applies at every step of the refinement.
inline BoundaryCurve trace_boundary(const ChainSpec& base, std::vector<AxisRef> axes,
                                    const BoundaryWindow& window,
                                    const BoundaryOptions& opts = {}) {
  if (axes.empty() || axes.size() > 2)
    throw std::invalid_argument("trace_boundary varies one or two axes");
  if (opts.resolution < 2) throw std::invalid_argument("resolution must be at least 2");
  if (base.family != ChainFamily::Symmetrized &&
      base.family != ChainFamily::GeneralTridiagonal)
    throw std::invalid_argument("boundary traces cover Symmetrized and GeneralTridiagonal");

  BoundaryCurve curve;
  curve.N = base.dimension;
  curve.axes = axes;
  curve.resolution = opts.resolution;
  curve.tolerance = to_double(opts.tolerance);

  std::vector<Rational> base_squared;
  if (base.family == ChainFamily::Symmetrized) {
    base_squared = squared_couplings_central_first(base);
    for (const auto& [letter, value] : opts.fixedSquared) {
      if (value < 0) throw std::invalid_argument("fixed squared coupling must be nonnegative");
      base_squared.at(static_cast<std::size_t>(letter)) = value;
    }
    const auto letters = coupling_letters(half_dimension(base.dimension));
    for (std::size_t i = 0; i < base_squared.size(); ++i) {
      bool varied = false;
      for (const auto& ax : axes) varied |= ax.index == static_cast<int>(i);
      if (!varied) curve.fixedSquared.emplace_back(letters[i], base_squared[i]);
    }
  }

  const bool two_axes = axes.size() == 2;
  const int grid_rays = two_axes ? opts.resolution : 1;
  const bool extreme_ray = opts.includeExtremeRay && two_axes &&
                           base.family == ChainFamily::Symmetrized;
  const int rays = grid_rays + (extreme_ray ? 1 : 0);
  std::vector<std::vector<std::array<double, 2>>> per_ray(static_cast<std::size_t>(rays));
  std::mutex failure_mutex;
  std::string failure;

  // Scans one ray: classifies `resolution` probes of the exact parameter s
  // in [slo, shi], bisects every verdict change down to `tol`, and hands
  // the bracket midpoint to emit.
  const auto scan_ray = [&](auto&& inside, const Rational& slo, const Rational& shi,
                            const Rational& tol, auto&& emit) {
    Rational prev_s = slo;
    bool prev_inside = inside(prev_s);
    for (int j = 1; j < opts.resolution; ++j) {
      const Rational s = slo + Rational(j) * (shi - slo) / Rational(opts.resolution - 1);
      const bool now = inside(s);
      if (now != prev_inside) {
        Rational lo = prev_s, hi = s;
        const bool lo_inside = prev_inside;
        while (hi - lo > tol) {
          const Rational mid = (lo + hi) / 2;
          if (inside(mid) == lo_inside)
            lo = mid;
          else
            hi = mid;
        }
        // bracket endpoints still disagree by construction
        if (inside(lo) == inside(hi))
          throw std::logic_error("boundary bracket lost its verdict change");
        emit((lo + hi) / 2);
      }
      prev_s = s;
      prev_inside = now;
    }
  };

  parallel_for(static_cast<std::size_t>(rays), [&](std::size_t ray) {
    try {
      detail::BoundaryProbe probe{base, axes, base_squared};
      if (extreme_ray && ray == static_cast<std::size_t>(grid_rays)) {
        // Radial ray through the extreme-exceptional-point direction,
        // parametrized by exact u with (x, y) = (sqrt(u dA), sqrt(u dB)).
        const auto eep = eep_closed_form(base.dimension);
        const Rational dA(eep.squaredCouplings[static_cast<std::size_t>(axes[0].index)]);
        const Rational dB(eep.squaredCouplings[static_cast<std::size_t>(axes[1].index)]);
        const auto clamp0 = [](const Rational& r) { return r < 0 ? Rational(0) : r; };
        const Rational xl = clamp0(window.xlo), yl = clamp0(window.ylo);
        const Rational ulo = std::max(Rational(xl * xl / dA), Rational(yl * yl / dB));
        if (window.xhi <= 0 || window.yhi <= 0) return;  // no nonnegative overlap
        const Rational uhi = std::min(Rational(window.xhi * window.xhi / dA),
                                      Rational(window.yhi * window.yhi / dB));
        if (uhi <= ulo) return;
        const Rational utol = opts.tolerance / (Rational(1) + std::max(dA, dB));
        const auto inside_u = [&](const Rational& u) {
          return probe.inside_squared({u * dA, u * dB});
        };
        scan_ray(inside_u, ulo, uhi, utol, [&](const Rational& u) {
          per_ray[ray].push_back({std::sqrt(to_double(u * dA)),
                                  std::sqrt(to_double(u * dB))});
        });
        return;
      }

      const Rational x = two_axes
          ? window.xlo + Rational(static_cast<long>(ray)) * (window.xhi - window.xlo) /
                             Rational(opts.resolution - 1)
          : Rational(0);
      const Rational slo = two_axes ? window.ylo : window.xlo;
      const Rational shi = two_axes ? window.yhi : window.xhi;
      const auto inside_s = [&](const Rational& s) {
        return probe.inside(two_axes ? std::vector<Rational>{x, s}
                                     : std::vector<Rational>{s});
      };
      scan_ray(inside_s, slo, shi, opts.tolerance, [&](const Rational& mid) {
        if (two_axes)
          per_ray[ray].push_back({to_double(x), to_double(mid)});
        else
          per_ray[ray].push_back({to_double(mid), 0.0});
      });
    } catch (const std::exception& e) {
      const std::lock_guard<std::mutex> lock(failure_mutex);
      if (failure.empty()) failure = e.what();
    }
  });
  if (!failure.empty()) throw std::runtime_error("trace_boundary: " + failure);

  for (const auto& ray_points : per_ray)
    curve.points.insert(curve.points.end(), ray_points.begin(), ray_points.end());
  curve.windowUniform = curve.points.empty();
  return curve;
}

}  // namespace ptchain
