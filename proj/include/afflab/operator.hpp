#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "afflab/error.hpp"
#include "afflab/fiber.hpp"
#include "afflab/polynomial.hpp"
#include "afflab/shape.hpp"

namespace afflab {

using MatrixTail = PolynomialTail<Matrix>;
using ScalarTail = PolynomialTail<Complex>;

namespace detail {

inline void validate_matrix_tail(const AlgebraShape& shape, const MatrixTail& tail) {
  if (tail.coeffs.empty()) throw Error(ErrorKind::InvalidArgument, "tail needs at least one coefficient");
  if (tail.coeffs.size() > MatrixTail::kMaxDegree + 1) {
    throw Error(ErrorKind::InvalidArgument, "tail degree exceeds the supported maximum");
  }
  const auto n = tail.coeffs.front().rows();
  for (const auto& c : tail.coeffs) {
    if (c.rows() != n || c.cols() != n) throw Error(ErrorKind::ShapeMismatch, "tail coefficients differ in size");
  }
  const std::size_t end = shape.tail() ? shape.blocks().size() : *shape.block_count();
  for (std::size_t k = tail.start; k < end; ++k) {
    if (shape.dim(k) != static_cast<std::size_t>(n)) {
      throw Error(ErrorKind::ShapeMismatch, "tail dimension disagrees with block", k);
    }
  }
  if (shape.tail() && shape.tail()->dim != static_cast<std::size_t>(n)) {
    throw Error(ErrorKind::ShapeMismatch, "tail dimension disagrees with the shape tail");
  }
}

/// True when every block from `start` on has the shape-tail dimension.
inline bool uniform_dims_from(const AlgebraShape& shape, std::size_t start) {
  if (!shape.tail()) return false;
  for (std::size_t k = start; k < shape.blocks().size(); ++k) {
    if (shape.blocks()[k].dim != shape.tail()->dim) return false;
  }
  return true;
}

}  // namespace detail

/// An operator affiliated with the block algebra: one matrix per block,
/// produced on demand. Values are immutable; copies share the fiber rule.
///
/// The optional tail is a closed-form description of every fiber from
/// `tail->start` on. It is what makes unbounded operators (fiber norms
/// growing in k) finitely representable and serializable.
class AffiliatedOperator {
 public:
  using FiberFn = std::function<Matrix(std::size_t)>;

  AffiliatedOperator(ShapePtr shape, FiberFn fn, std::optional<MatrixTail> tail = std::nullopt)
      : shape_(std::move(shape)),
        fn_(std::make_shared<const FiberFn>(std::move(fn))),
        tail_(std::move(tail)) {
    if (!shape_) throw Error(ErrorKind::InvalidArgument, "operator needs a shape");
    if (tail_) detail::validate_matrix_tail(*shape_, *tail_);
  }

  /// Explicit fibers for k < prefix.size(), the tail after that, and zero
  /// fibers past the prefix when there is no tail.
  static AffiliatedOperator from_prefix(ShapePtr shape, std::vector<Matrix> prefix,
                                        std::optional<MatrixTail> tail = std::nullopt) {
    for (std::size_t k = 0; k < prefix.size(); ++k) {
      if (!shape->contains(k)) throw Error(ErrorKind::ShapeMismatch, "prefix longer than the algebra", k);
      const auto n = static_cast<Eigen::Index>(shape->dim(k));
      if (prefix[k].rows() != n || prefix[k].cols() != n) {
        throw Error(ErrorKind::ShapeMismatch, "prefix fiber has the wrong size", k);
      }
    }
    if (tail && tail->start > prefix.size()) {
      throw Error(ErrorKind::InvalidArgument, "tail must start at or before the end of the prefix");
    }
    auto data = std::make_shared<const std::vector<Matrix>>(std::move(prefix));
    std::optional<MatrixTail> fn_tail = tail;
    const ShapePtr s = shape;
    FiberFn fn = [data, fn_tail, s](std::size_t k) -> Matrix {
      if (k < data->size()) return (*data)[k];
      if (fn_tail) return (*fn_tail)(k);
      return fiber::zero(s->dim(k));
    };
    if (tail) tail->start = data->size();
    return AffiliatedOperator(std::move(shape), std::move(fn), std::move(tail));
  }

  static AffiliatedOperator scalar_identity(ShapePtr shape, Complex c = 1.0) {
    std::optional<MatrixTail> tail;
    if (shape->tail()) {
      const std::size_t start = shape->blocks().size();
      tail = MatrixTail{start, {c * fiber::identity(shape->tail()->dim)}};
    }
    const ShapePtr s = shape;
    return AffiliatedOperator(std::move(shape),
                              [s, c](std::size_t k) -> Matrix { return c * fiber::identity(s->dim(k)); },
                              std::move(tail));
  }

  static AffiliatedOperator identity(ShapePtr shape) { return scalar_identity(std::move(shape), 1.0); }
  static AffiliatedOperator zero(ShapePtr shape) { return scalar_identity(std::move(shape), 0.0); }

  Matrix fiber(std::size_t k) const {
    const auto n = static_cast<Eigen::Index>(shape_->dim(k));
    Matrix m = (*fn_)(k);
    if (m.rows() != n || m.cols() != n) {
      throw Error(ErrorKind::ShapeMismatch, "fiber rule produced a matrix of the wrong size", k);
    }
    return m;
  }

  const AlgebraShape& shape() const noexcept { return *shape_; }
  const ShapePtr& shape_ptr() const noexcept { return shape_; }
  const std::optional<MatrixTail>& tail() const noexcept { return tail_; }

  AffiliatedOperator without_tail() const { return AffiliatedOperator(shape_, *fn_); }

 private:
  ShapePtr shape_;
  std::shared_ptr<const FiberFn> fn_;
  std::optional<MatrixTail> tail_;
};

/// An element of the bounded algebra: an operator together with a
/// certificate `norm_bound >= sup_k ||fiber(k)||`.
class BoundedElement {
 public:
  /// Accepts the bound after checking it on the horizon and on the tail.
  /// A tail of degree >= 1 grows without bound and is always rejected.
  static BoundedElement certify(AffiliatedOperator op, double norm_bound, const ToleranceConfig& cfg) {
    if (!(norm_bound >= 0.0)) throw Error(ErrorKind::InvalidArgument, "norm bound must be nonnegative");
    if (op.tail() && !op.tail()->constant()) {
      throw Error(ErrorKind::CertificateViolation, "polynomial tail is unbounded", op.tail()->start);
    }
    const std::size_t end = op.shape().horizon_end(cfg.horizon);
    for (std::size_t k = 0; k < end; ++k) {
      if (fiber::spectral_norm(op.fiber(k)) > norm_bound * (1.0 + cfg.eq_tol) + cfg.eq_tol) {
        throw Error(ErrorKind::CertificateViolation, "fiber norm exceeds the declared bound", k);
      }
    }
    if (op.tail() && op.tail()->constant() &&
        fiber::spectral_norm(op.tail()->coeffs.front()) > norm_bound * (1.0 + cfg.eq_tol) + cfg.eq_tol) {
      throw Error(ErrorKind::CertificateViolation, "constant tail exceeds the declared bound",
                  op.tail()->start);
    }
    return BoundedElement(std::move(op), norm_bound);
  }

  /// For results whose bound holds by construction (e.g. B-transforms).
  static BoundedElement trusted(AffiliatedOperator op, double norm_bound) {
    return BoundedElement(std::move(op), norm_bound);
  }

  const AffiliatedOperator& op() const noexcept { return op_; }
  double norm_bound() const noexcept { return norm_bound_; }
  Matrix fiber(std::size_t k) const { return op_.fiber(k); }
  const AlgebraShape& shape() const noexcept { return op_.shape(); }
  const ShapePtr& shape_ptr() const noexcept { return op_.shape_ptr(); }

  operator const AffiliatedOperator&() const noexcept { return op_; }

 private:
  BoundedElement(AffiliatedOperator op, double bound) : op_(std::move(op)), norm_bound_(bound) {}

  AffiliatedOperator op_;
  double norm_bound_;
};

/// An element of Aff(Z(A)): one scalar per block, acting as that scalar
/// times the block identity.
class CentralElement {
 public:
  using ValueFn = std::function<Complex(std::size_t)>;

  CentralElement(ShapePtr shape, ValueFn fn, std::optional<ScalarTail> tail = std::nullopt)
      : shape_(std::move(shape)),
        fn_(std::make_shared<const ValueFn>(std::move(fn))),
        tail_(std::move(tail)) {
    if (!shape_) throw Error(ErrorKind::InvalidArgument, "central element needs a shape");
    if (tail_ && (tail_->coeffs.empty() || tail_->coeffs.size() > ScalarTail::kMaxDegree + 1)) {
      throw Error(ErrorKind::InvalidArgument, "scalar tail has an invalid degree");
    }
  }

  static CentralElement from_prefix(ShapePtr shape, std::vector<Complex> prefix,
                                    std::optional<ScalarTail> tail = std::nullopt) {
    if (!shape->tail() && prefix.size() > shape->blocks().size()) {
      throw Error(ErrorKind::ShapeMismatch, "prefix longer than the algebra");
    }
    if (tail && tail->start > prefix.size()) {
      throw Error(ErrorKind::InvalidArgument, "tail must start at or before the end of the prefix");
    }
    auto data = std::make_shared<const std::vector<Complex>>(std::move(prefix));
    std::optional<ScalarTail> fn_tail = tail;
    ValueFn fn = [data, fn_tail](std::size_t k) -> Complex {
      if (k < data->size()) return (*data)[k];
      if (fn_tail) return (*fn_tail)(k);
      return Complex(0.0);
    };
    if (tail) tail->start = data->size();
    return CentralElement(std::move(shape), std::move(fn), std::move(tail));
  }

  static CentralElement constant(ShapePtr shape, Complex c) {
    std::optional<ScalarTail> tail;
    if (shape->tail()) tail = ScalarTail{shape->blocks().size(), {c}};
    return CentralElement(std::move(shape), [c](std::size_t) { return c; }, std::move(tail));
  }

  Complex value(std::size_t k) const {
    if (!shape_->contains(k)) throw Error(ErrorKind::OutOfRange, "block index beyond a finite algebra", k);
    return (*fn_)(k);
  }

  const AlgebraShape& shape() const noexcept { return *shape_; }
  const ShapePtr& shape_ptr() const noexcept { return shape_; }
  const std::optional<ScalarTail>& tail() const noexcept { return tail_; }

  /// The same element as a block-diagonal operator, value(k) * I at block k.
  AffiliatedOperator as_operator() const {
    std::optional<MatrixTail> tail;
    if (tail_ && shape_->tail() && detail::uniform_dims_from(*shape_, tail_->start)) {
      const auto n = shape_->tail()->dim;
      tail = tails::map<Matrix>(*tail_, [n](const Complex& c) -> Matrix { return c * fiber::identity(n); });
    }
    const auto fn = fn_;
    const ShapePtr s = shape_;
    return AffiliatedOperator(
        shape_, [fn, s](std::size_t k) -> Matrix { return (*fn)(k) * fiber::identity(s->dim(k)); },
        std::move(tail));
  }

 private:
  ShapePtr shape_;
  std::shared_ptr<const ValueFn> fn_;
  std::optional<ScalarTail> tail_;
};

}  // namespace afflab
