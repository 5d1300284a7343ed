#pragma once

#include <initializer_list>
#include <vector>

#include "afflab/afflab.hpp"

namespace testing_support {

using afflab::Complex;
using afflab::Matrix;

inline Matrix diag(std::initializer_list<double> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

inline Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline Matrix scalar(Complex c) { return Matrix::Constant(1, 1, c); }

/// n blocks of the same dimension, equal weights.
inline afflab::ShapePtr uniform_shape(std::size_t n, std::size_t dim) {
  return afflab::make_shape(std::vector<afflab::BlockShape>(n, afflab::BlockShape{1.0, dim}));
}

/// Infinite algebra: `dim`-dimensional blocks from block 0 with weights 2^{-k-1}.
inline afflab::ShapePtr tail_shape(std::size_t dim) {
  return afflab::make_shape({}, afflab::ShapeTail{dim, 0.5});
}

/// Constant fiber on every block, with a constant tail when the shape has one.
inline afflab::AffiliatedOperator constant_operator(const afflab::ShapePtr& s, const Matrix& f) {
  std::optional<afflab::MatrixTail> tail;
  if (s->tail()) tail = afflab::MatrixTail{s->blocks().size(), {f}};
  return afflab::AffiliatedOperator(s, [f](std::size_t) { return f; }, tail);
}

/// Fiber k * f + c on every block (degree-1 tail).
inline afflab::AffiliatedOperator linear_operator(const afflab::ShapePtr& s, const Matrix& f, const Matrix& c) {
  std::optional<afflab::MatrixTail> tail;
  if (s->tail()) tail = afflab::MatrixTail{s->blocks().size(), {c, f}};
  return afflab::AffiliatedOperator(
      s, [f, c](std::size_t k) -> Matrix { return static_cast<double>(k) * f + c; }, tail);
}

}  // namespace testing_support
