#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "afflab/error.hpp"
#include "afflab/fiber.hpp"
#include "afflab/operator.hpp"
#include "afflab/shape.hpp"

namespace afflab {

enum class CombineKind { add, sub, mul, adjoint, scale };

/// The *-algebra operations of Aff(A), applied fiber by fiber. Tails are
/// combined in closed form when every operand has one; otherwise the
/// result is tailless.
inline AffiliatedOperator algebra_combine(CombineKind kind, const AffiliatedOperator& x,
                                          const std::optional<AffiliatedOperator>& y = std::nullopt,
                                          std::optional<Complex> alpha = std::nullopt) {
  const bool binary = kind == CombineKind::add || kind == CombineKind::sub || kind == CombineKind::mul;
  if (binary != y.has_value()) {
    throw Error(ErrorKind::MissingOperand, binary ? "binary operation needs a second operand"
                                                  : "unary operation takes no second operand");
  }
  if ((kind == CombineKind::scale) != alpha.has_value()) {
    throw Error(ErrorKind::MissingOperand, kind == CombineKind::scale ? "scale needs a coefficient"
                                                                      : "only scale takes a coefficient");
  }
  if (binary) require_same_shape(x.shape_ptr(), y->shape_ptr(), "operands live on different algebras");

  std::optional<MatrixTail> tail;
  switch (kind) {
    case CombineKind::add:
    case CombineKind::sub: {
      if (x.tail() && y->tail()) tail = tails::add(*x.tail(), *y->tail(), kind == CombineKind::add ? 1.0 : -1.0);
      const double sign = kind == CombineKind::add ? 1.0 : -1.0;
      return AffiliatedOperator(
          x.shape_ptr(), [x, y = *y, sign](std::size_t k) -> Matrix { return x.fiber(k) + sign * y.fiber(k); },
          std::move(tail));
    }
    case CombineKind::mul: {
      if (x.tail() && y->tail()) tail = tails::mul(*x.tail(), *y->tail());
      return AffiliatedOperator(
          x.shape_ptr(), [x, y = *y](std::size_t k) -> Matrix { return x.fiber(k) * y.fiber(k); },
          std::move(tail));
    }
    case CombineKind::adjoint: {
      if (x.tail()) tail = tails::adjoint(*x.tail());
      return AffiliatedOperator(
          x.shape_ptr(), [x](std::size_t k) -> Matrix { return x.fiber(k).adjoint(); }, std::move(tail));
    }
    case CombineKind::scale: {
      const Complex a = *alpha;
      if (x.tail()) tail = tails::scale(*x.tail(), a);
      return AffiliatedOperator(
          x.shape_ptr(), [x, a](std::size_t k) -> Matrix { return a * x.fiber(k); }, std::move(tail));
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown combine kind");
}

inline AffiliatedOperator operator+(const AffiliatedOperator& x, const AffiliatedOperator& y) {
  return algebra_combine(CombineKind::add, x, y);
}
inline AffiliatedOperator operator-(const AffiliatedOperator& x, const AffiliatedOperator& y) {
  return algebra_combine(CombineKind::sub, x, y);
}
inline AffiliatedOperator operator*(const AffiliatedOperator& x, const AffiliatedOperator& y) {
  return algebra_combine(CombineKind::mul, x, y);
}
inline AffiliatedOperator operator*(Complex a, const AffiliatedOperator& x) {
  return algebra_combine(CombineKind::scale, x, std::nullopt, a);
}
inline AffiliatedOperator adjoint(const AffiliatedOperator& x) {
  return algebra_combine(CombineKind::adjoint, x);
}

inline CentralElement operator+(const CentralElement& a, const CentralElement& b) {
  require_same_shape(a.shape_ptr(), b.shape_ptr(), "central operands live on different algebras");
  std::optional<ScalarTail> tail;
  if (a.tail() && b.tail()) tail = tails::add(*a.tail(), *b.tail());
  return CentralElement(a.shape_ptr(), [a, b](std::size_t k) { return a.value(k) + b.value(k); }, std::move(tail));
}
inline CentralElement operator-(const CentralElement& a, const CentralElement& b) {
  require_same_shape(a.shape_ptr(), b.shape_ptr(), "central operands live on different algebras");
  std::optional<ScalarTail> tail;
  if (a.tail() && b.tail()) tail = tails::add(*a.tail(), *b.tail(), -1.0);
  return CentralElement(a.shape_ptr(), [a, b](std::size_t k) { return a.value(k) - b.value(k); }, std::move(tail));
}
inline CentralElement operator*(const CentralElement& a, const CentralElement& b) {
  require_same_shape(a.shape_ptr(), b.shape_ptr(), "central operands live on different algebras");
  std::optional<ScalarTail> tail;
  if (a.tail() && b.tail()) tail = tails::mul(*a.tail(), *b.tail());
  return CentralElement(a.shape_ptr(), [a, b](std::size_t k) { return a.value(k) * b.value(k); }, std::move(tail));
}
inline CentralElement operator*(Complex c, const CentralElement& a) {
  std::optional<ScalarTail> tail;
  if (a.tail()) tail = tails::scale(*a.tail(), c);
  return CentralElement(a.shape_ptr(), [a, c](std::size_t k) { return c * a.value(k); }, std::move(tail));
}
inline CentralElement adjoint(const CentralElement& a) {
  std::optional<ScalarTail> tail;
  if (a.tail()) tail = tails::adjoint(*a.tail());
  return CentralElement(a.shape_ptr(), [a](std::size_t k) { return std::conj(a.value(k)); }, std::move(tail));
}

/// Restriction to a subset of blocks, as an operator on the finite
/// sub-algebra made of exactly those blocks.
inline AffiliatedOperator restrict_to_blocks(const AffiliatedOperator& x, const std::vector<std::size_t>& blocks) {
  std::vector<BlockShape> sub;
  for (auto k : blocks) sub.push_back({x.shape().weight(k), x.shape().dim(k)});
  auto shape = make_shape(std::move(sub));
  return AffiliatedOperator(shape, [x, blocks](std::size_t j) -> Matrix { return x.fiber(blocks.at(j)); });
}

struct NormEstimate {
  double value = 0.0;
  bool certified = false;
};

/// Largest fiber norm on the horizon. The estimate is certified (and then
/// equals the supremum over all blocks) when the horizon covers a finite
/// algebra, or when a constant tail determines all remaining fibers.
inline NormEstimate operator_norm(const AffiliatedOperator& x, const ToleranceConfig& cfg) {
  const auto& shape = x.shape();
  const std::size_t end = shape.horizon_end(cfg.horizon);
  double value = 0.0;
  for (std::size_t k = 0; k < end; ++k) value = std::max(value, fiber::spectral_norm(x.fiber(k)));
  if (shape.block_count() && end == *shape.block_count()) return {value, true};
  if (x.tail() && x.tail()->constant()) {
    double sup = fiber::spectral_norm(x.tail()->coeffs.front());
    for (std::size_t k = 0; k < x.tail()->start; ++k) sup = std::max(sup, fiber::spectral_norm(x.fiber(k)));
    return {sup, true};
  }
  return {value, false};
}

/// True iff every horizon fiber is positive semidefinite. The eigenvalue
/// floor is -psd_tol scaled by max(1, ||fiber||).
inline bool is_nonnegative(const AffiliatedOperator& a, const ToleranceConfig& cfg) {
  const std::size_t end = a.shape().horizon_end(cfg.horizon);
  for (std::size_t k = 0; k < end; ++k) {
    const Matrix f = a.fiber(k);
    if (!fiber::is_hermitian(f, cfg.eq_tol)) {
      throw Error(ErrorKind::NotSelfAdjoint, "fiber is not Hermitian", k);
    }
    if (!fiber::is_psd(f, cfg.psd_tol, k)) return false;
  }
  return true;
}

inline bool is_self_adjoint(const AffiliatedOperator& a, const ToleranceConfig& cfg) {
  const std::size_t end = a.shape().horizon_end(cfg.horizon);
  for (std::size_t k = 0; k < end; ++k) {
    if (!fiber::is_hermitian(a.fiber(k), cfg.eq_tol)) return false;
  }
  return true;
}

/// Central iff every horizon fiber is a scalar multiple of its identity.
inline bool is_central(const AffiliatedOperator& x, const ToleranceConfig& cfg) {
  const std::size_t end = x.shape().horizon_end(cfg.horizon);
  for (std::size_t k = 0; k < end; ++k) {
    if (!fiber::is_scalar(x.fiber(k), cfg.eq_tol)) return false;
  }
  return true;
}

/// Fiberwise comparison with relative Frobenius tolerance:
/// ||X(k) - Y(k)|| <= eq_tol * (1 + max(||X(k)||, ||Y(k)||)) for k < H.
inline bool approx_equal(const AffiliatedOperator& x, const AffiliatedOperator& y, const ToleranceConfig& cfg) {
  require_same_shape(x.shape_ptr(), y.shape_ptr(), "cannot compare operators on different algebras");
  const std::size_t end = x.shape().horizon_end(cfg.horizon);
  for (std::size_t k = 0; k < end; ++k) {
    if (!fiber::close(x.fiber(k), y.fiber(k), cfg.eq_tol)) return false;
  }
  return true;
}

/// Worst relative fiber distance on the horizon, with the block attaining it.
struct FiberResidual {
  double value = 0.0;
  std::size_t block = 0;
};

inline FiberResidual max_relative_residual(const AffiliatedOperator& x, const AffiliatedOperator& y,
                                           std::size_t horizon) {
  require_same_shape(x.shape_ptr(), y.shape_ptr(), "cannot compare operators on different algebras");
  FiberResidual worst;
  const std::size_t end = x.shape().horizon_end(horizon);
  for (std::size_t k = 0; k < end; ++k) {
    const double r = fiber::relative_distance(x.fiber(k), y.fiber(k));
    if (r > worst.value || std::isnan(r)) worst = {r, k};
  }
  return worst;
}

struct KernelWitness {
  std::size_t block = 0;
  Matrix g;
  double residual = 0.0;  ///< ||(I - T(k)* T(k)) g||
};

/// Rank-one witness for a single fiber t with ||t|| <= 1: the projector
/// onto the bottom eigenvector of I - t* t, returned when that eigenvalue
/// is at most psd_tol (so the annihilation residual is at most psd_tol).
inline std::optional<KernelWitness> fiber_kernel_witness(const Matrix& t, std::size_t block,
                                                         const ToleranceConfig& cfg) {
  const auto n = static_cast<std::size_t>(t.rows());
  const Matrix defect = fiber::identity(n) - t.adjoint() * t;
  const auto eig = fiber::hermitian_eigen(defect, block);
  if (eig.values(0) < -2.0 * cfg.eq_tol - 4.0 * std::numeric_limits<double>::epsilon()) {
    throw Error(ErrorKind::NormExceedsOne, "fiber norm exceeds one", block);
  }
  if (eig.values(0) > cfg.psd_tol) return std::nullopt;
  const Eigen::VectorXcd v = eig.vectors.col(0);
  KernelWitness w{block, v * v.adjoint(), 0.0};
  w.residual = (defect * w.g).norm();
  return w;
}

/// First horizon block whose fiber reaches norm one, with the rank-one
/// element annihilated by I - T*T there; nullopt is strict-contraction
/// evidence on the horizon.
inline std::optional<KernelWitness> kernel_witness(const BoundedElement& t, const ToleranceConfig& cfg) {
  if (t.norm_bound() > 1.0 + cfg.eq_tol) {
    throw Error(ErrorKind::NormExceedsOne, "kernel witness needs a norm bound of at most one");
  }
  const std::size_t end = t.shape().horizon_end(cfg.horizon);
  for (std::size_t k = 0; k < end; ++k) {
    if (auto w = fiber_kernel_witness(t.fiber(k), k, cfg)) return w;
  }
  return std::nullopt;
}

}  // namespace afflab
