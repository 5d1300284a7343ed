#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "afflab/error.hpp"
#include "afflab/polynomial.hpp"

// Dense kernels acting on a single block fiber.
namespace afflab::fiber {

inline Matrix identity(std::size_t n) {
  return Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

inline Matrix zero(std::size_t n) {
  return Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

inline double frobenius(const Matrix& m) { return m.norm(); }

inline double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

inline Complex normalized_trace(const Matrix& m) {
  return m.trace() / static_cast<double>(m.rows());
}

/// Relative Frobenius closeness: ||a - b|| <= tol * (1 + max(||a||, ||b||)).
inline bool close(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).norm() <= tol * (1.0 + std::max(a.norm(), b.norm()));
}

inline double relative_distance(const Matrix& a, const Matrix& b) {
  return (a - b).norm() / (1.0 + std::max(a.norm(), b.norm()));
}

inline bool is_hermitian(const Matrix& m, double tol) {
  return (m - m.adjoint()).norm() <= tol * (1.0 + m.norm());
}

/// Eigen-decomposition of the Hermitian part of `m`, ascending eigenvalues.
/// Eigen's solver already orders ascending; equal eigenvalues keep the
/// solver's basis order, which is deterministic for a given input.
struct HermitianEigen {
  Eigen::VectorXd values;
  Matrix vectors;
};

inline HermitianEigen hermitian_eigen(const Matrix& m, std::optional<std::size_t> block = {}) {
  const Matrix h = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::NumericalFailure, "Hermitian eigendecomposition did not converge", block);
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

inline double min_eigenvalue(const Matrix& hermitian, std::optional<std::size_t> block = {}) {
  return hermitian_eigen(hermitian, block).values(0);
}

/// PSD test with tolerance relative to the fiber's scale. For a difference
/// B - A pass the operands' scale as `operand_scale`, since rounding in
/// the subtraction grows with ||A|| and ||B||, not with ||B - A||.
inline bool is_psd(const Matrix& hermitian, double psd_tol, std::optional<std::size_t> block = {},
                   double operand_scale = 0.0) {
  const auto eig = hermitian_eigen(hermitian, block);
  const double scale = std::max({1.0, eig.values.cwiseAbs().maxCoeff(), operand_scale});
  return eig.values(0) >= -psd_tol * scale;
}

/// Scalar multiple of the identity within relative tolerance.
inline bool is_scalar(const Matrix& m, double tol) {
  const Complex c = normalized_trace(m);
  const Matrix diff = m - c * identity(static_cast<std::size_t>(m.rows()));
  return diff.norm() <= tol * (1.0 + m.norm());
}

/// Applies a real function to the spectrum of a Hermitian fiber.
template <class Fn>
Matrix hermitian_function(const Matrix& m, Fn&& fn, std::optional<std::size_t> block = {}) {
  const auto eig = hermitian_eigen(m, block);
  Eigen::VectorXd mapped = eig.values;
  for (Eigen::Index i = 0; i < mapped.size(); ++i) mapped(i) = fn(mapped(i));
  return eig.vectors * mapped.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

}  // namespace afflab::fiber
