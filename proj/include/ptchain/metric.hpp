#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptchain/chain.hpp"
#include "ptchain/rational.hpp"

namespace ptchain {

inline Eigen::MatrixXd to_dense(const TridiagonalMatrix& t) {
  const int n = t.dimension();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = to_double(t.diag[static_cast<std::size_t>(i)]);
  for (int i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = to_double(t.super[static_cast<std::size_t>(i)]);
    m(i + 1, i) = to_double(t.sub[static_cast<std::size_t>(i)]);
  }
  return m;
}

struct EigenDecomposition {
  std::vector<std::complex<double>> values;
  Eigen::MatrixXcd vectors;  // columns; empty when not requested
};

/// All eigenvalues of a small dense real matrix (conjugate-paired when
/// complex). Accuracy away from degeneracies is the usual backward-stable
/// QR contract; defective points scatter like eps^(1/N) and are reported
/// as-is.
inline EigenDecomposition eigen_numeric(const Eigen::MatrixXd& m,
                                        bool want_vectors = false) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigen_numeric: square matrix required");
  if (m.rows() > 64) throw std::invalid_argument("eigen_numeric: desk scale only (N <= 64)");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, want_vectors);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigen_numeric: QR iteration failed to converge");
  EigenDecomposition out;
  const auto vals = solver.eigenvalues();
  out.values.assign(vals.data(), vals.data() + vals.size());
  if (want_vectors) out.vectors = solver.eigenvectors();
  return out;
}

inline EigenDecomposition eigen_numeric(const TridiagonalMatrix& t,
                                        bool want_vectors = false) {
  return eigen_numeric(to_dense(t), want_vectors);
}

/// Right eigenvectors of H paired with left eigenvectors (eigenvectors of
/// the transpose), normalized to <<m|n> = delta_mn.
struct BiorthogonalBasis {
  std::vector<double> energies;            // ascending
  Eigen::MatrixXd rightVectors;            // columns |n>
  Eigen::MatrixXd leftVectors;             // columns |n>>, scaled against right
  std::vector<double> conditionIndicators; // |<<n|n>| before rescaling
};

struct DecompositionRefused : std::runtime_error {
  explicit DecompositionRefused(const std::string& why) : std::runtime_error(why) {}
};

/// Decomposes a real matrix whose spectrum is already known (or required)
/// to be real and simple. Callers holding an exact membership verdict gate
/// on it first; this routine still defends itself with numeric checks.
inline BiorthogonalBasis biorthogonal_decomposition(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const auto right = eigen_numeric(m, true);
  const auto left = eigen_numeric(Eigen::MatrixXd(m.transpose()), true);

  for (const auto& v : right.values)
    if (std::abs(v.imag()) > 1e-8 * scale)
      throw DecompositionRefused("spectrum is not real: eigenvalue with imaginary part " +
                                 std::to_string(v.imag()));

  std::vector<int> ir(static_cast<std::size_t>(n)), il(static_cast<std::size_t>(n));
  std::iota(ir.begin(), ir.end(), 0);
  std::iota(il.begin(), il.end(), 0);
  const auto by_real = [](const auto& vals) {
    return [&vals](int a, int b) { return vals[static_cast<std::size_t>(a)].real() < vals[static_cast<std::size_t>(b)].real(); };
  };
  std::sort(ir.begin(), ir.end(), by_real(right.values));
  std::sort(il.begin(), il.end(), by_real(left.values));

  BiorthogonalBasis basis;
  basis.rightVectors.resize(n, n);
  basis.leftVectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    const double er = right.values[static_cast<std::size_t>(ir[static_cast<std::size_t>(k)])].real();
    const double el = left.values[static_cast<std::size_t>(il[static_cast<std::size_t>(k)])].real();
    if (std::abs(er - el) > 1e-7 * scale)
      throw DecompositionRefused("left/right eigenvalue mismatch; spectrum too ill-conditioned");
    if (k > 0 && std::abs(er - basis.energies.back()) < 1e-10 * scale)
      throw DecompositionRefused("spectrum is not simple near E = " + std::to_string(er));
    basis.energies.push_back(er);
    basis.rightVectors.col(k) = right.vectors.col(ir[static_cast<std::size_t>(k)]).real();
    basis.leftVectors.col(k) = left.vectors.col(il[static_cast<std::size_t>(k)]).real();
    basis.rightVectors.col(k).normalize();
    basis.leftVectors.col(k).normalize();
  }

  for (int k = 0; k < n; ++k) {
    const double overlap = basis.leftVectors.col(k).dot(basis.rightVectors.col(k));
    basis.conditionIndicators.push_back(std::abs(overlap));
    if (std::abs(overlap) < 1e-12)
      throw DecompositionRefused("near-defective pair: left/right overlap " +
                                 std::to_string(overlap));
    basis.leftVectors.col(k) /= overlap;
  }
  return basis;
}

inline BiorthogonalBasis biorthogonal_decomposition(const TridiagonalMatrix& t) {
  return biorthogonal_decomposition(to_dense(t));
}

/// Metric operator Theta = sum_n |n>> s_n <<n| and its quasi-Hermiticity
/// diagnostics.
struct MetricResult {
  Eigen::MatrixXd theta;
  std::vector<double> weights;
  double residual = 0.0;              // max-norm of H^T Theta - Theta H
  double minEigenvalueEstimate = 0.0;
};

inline MetricResult build_metric(const BiorthogonalBasis& basis,
                                 const Eigen::MatrixXd& h,
                                 const std::vector<double>& weights) {
  const int n = static_cast<int>(basis.energies.size());
  if (static_cast<int>(weights.size()) != n)
    throw std::invalid_argument("build_metric: need one weight per level");
  for (double w : weights)
    if (!(w > 0.0))
      throw std::invalid_argument("build_metric: weights must be positive");

  Eigen::MatrixXd theta(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double v = 0.0;
      for (int k = 0; k < n; ++k)
        v += weights[static_cast<std::size_t>(k)] * basis.leftVectors(i, k) * basis.leftVectors(j, k);
      theta(i, j) = v;
      theta(j, i) = v;
    }
  }

  MetricResult out;
  out.theta = theta;
  out.weights = weights;
  out.residual = (h.transpose() * theta - theta * h).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sa(theta);
  out.minEigenvalueEstimate = sa.eigenvalues().minCoeff();
  return out;
}

inline MetricResult build_metric(const BiorthogonalBasis& basis,
                                 const TridiagonalMatrix& t,
                                 const std::vector<double>& weights) {
  return build_metric(basis, to_dense(t), weights);
}

}  // namespace ptchain
