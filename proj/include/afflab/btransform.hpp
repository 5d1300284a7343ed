#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>

#include "afflab/algebra.hpp"
#include "afflab/error.hpp"
#include "afflab/fiber.hpp"
#include "afflab/operator.hpp"

namespace afflab {

namespace detail {

/// |m| = V diag(s) V* from the eigendecomposition of m* m, with the
/// eigenvalues clamped at zero before the square root.
struct AbsoluteValue {
  Matrix vectors;
  Eigen::VectorXd singular;  // ascending
};

inline AbsoluteValue absolute_value(const Matrix& m, std::optional<std::size_t> block = {}) {
  auto eig = fiber::hermitian_eigen(m.adjoint() * m, block);
  return {std::move(eig.vectors), eig.values.cwiseMax(0.0).cwiseSqrt()};
}

/// Largest admissible 1 / (1 - ||S(k)||) in the inverse transform.
inline constexpr double kResolventGuard = 1e12;

}  // namespace detail

namespace fiber {

inline Matrix abs(const Matrix& m) {
  const auto a = detail::absolute_value(m);
  return a.vectors * a.singular.cast<Complex>().asDiagonal() * a.vectors.adjoint();
}

/// T (I + |T|)^{-1} on one fiber.
inline Matrix b_transform(const Matrix& t, std::optional<std::size_t> block = {}) {
  const auto a = detail::absolute_value(t, block);
  Eigen::VectorXd resolvent = (1.0 + a.singular.array()).inverse();
  return t * a.vectors * resolvent.cast<Complex>().asDiagonal() * a.vectors.adjoint();
}

/// S (I - |S|)^{-1} on one fiber; rejects fibers that are not strict
/// contractions or whose resolvent exceeds the conditioning guard.
inline Matrix inverse_b(const Matrix& s, std::size_t block) {
  const auto a = detail::absolute_value(s, block);
  const double top = a.singular.size() ? a.singular.maxCoeff() : 0.0;
  if (!(top < 1.0) || 1.0 / (1.0 - top) > detail::kResolventGuard) {
    throw Error(ErrorKind::NotStrictContraction, "fiber is not a strict contraction", block);
  }
  Eigen::VectorXd resolvent = (1.0 - a.singular.array()).inverse();
  return s * a.vectors * resolvent.cast<Complex>().asDiagonal() * a.vectors.adjoint();
}

}  // namespace fiber

/// B(T) = T (I + |T|)^{-1}, a fiberwise strict contraction. A constant
/// tail maps to a constant tail; higher-degree tails are not closed under B.
inline BoundedElement b_transform(const AffiliatedOperator& t) {
  std::optional<MatrixTail> tail;
  if (t.tail() && t.tail()->constant()) {
    tail = MatrixTail{t.tail()->start, {fiber::b_transform(t.tail()->coeffs.front(), t.tail()->start)}};
  }
  auto op = AffiliatedOperator(
      t.shape_ptr(), [t](std::size_t k) -> Matrix { return fiber::b_transform(t.fiber(k), k); }, std::move(tail));
  return BoundedElement::trusted(std::move(op), 1.0);
}

/// UB(S) = S (I - |S|)^{-1}. Fibers are checked when evaluated; an
/// offending fiber raises NotStrictContraction for its block.
inline AffiliatedOperator inverse_b(const AffiliatedOperator& s) {
  std::optional<MatrixTail> tail;
  if (s.tail() && s.tail()->constant()) {
    tail = MatrixTail{s.tail()->start, {fiber::inverse_b(s.tail()->coeffs.front(), s.tail()->start)}};
  }
  return AffiliatedOperator(
      s.shape_ptr(), [s](std::size_t k) -> Matrix { return fiber::inverse_b(s.fiber(k), k); }, std::move(tail));
}

inline AffiliatedOperator inverse_b(const BoundedElement& s) { return inverse_b(s.op()); }

/// Scalar forms of the transforms.
inline double b_scalar(double t) { return t / (1.0 + std::abs(t)); }
inline double ub_scalar(double s) { return s / (1.0 - std::abs(s)); }

struct BoundednessCertificate {
  enum class Status { bounded, unbounded_evidence, inconclusive };

  Status status = Status::inconclusive;
  double bound = 0.0;        ///< sup ||T|| when bounded
  std::size_t block = 0;     ///< horizon block with the largest ||B(T)(k)||
  double statistic = 0.0;    ///< sup over the horizon of ||B(T)(k)||
};

/// T is bounded iff ||B(T)|| < 1. The supremum over all blocks is exact
/// for finite algebras covered by the horizon and for constant tails;
/// a tail of positive degree has fiber norms growing without bound, so
/// the B-fiber norms tend to one along it.
inline BoundednessCertificate boundedness_certificate(const AffiliatedOperator& t, const ToleranceConfig& cfg) {
  const auto bt = b_transform(t);
  const auto& shape = t.shape();
  BoundednessCertificate cert;
  const std::size_t end = shape.horizon_end(cfg.horizon);
  for (std::size_t k = 0; k < end; ++k) {
    const double s = fiber::spectral_norm(bt.fiber(k));
    if (s > cert.statistic || k == 0) {
      cert.statistic = s;
      cert.block = k;
    }
  }
  using Status = BoundednessCertificate::Status;
  std::optional<double> exact_sup;
  if (shape.block_count() && end == *shape.block_count()) {
    exact_sup = cert.statistic;
  } else if (t.tail() && t.tail()->constant()) {
    double sup = fiber::spectral_norm(bt.op().tail()->coeffs.front());
    for (std::size_t k = 0; k < t.tail()->start; ++k) sup = std::max(sup, fiber::spectral_norm(bt.fiber(k)));
    exact_sup = sup;
  }
  if (exact_sup && *exact_sup < 1.0) {
    cert.status = Status::bounded;
    cert.bound = ub_scalar(*exact_sup);
  } else if (!exact_sup && t.tail() && t.tail()->degree() >= 1) {
    cert.status = Status::unbounded_evidence;
  }
  return cert;
}

}  // namespace afflab
