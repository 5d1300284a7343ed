#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "afflab/error.hpp"

namespace afflab {

/// One atom of the underlying measure space carrying a full matrix algebra
/// M_dim; `weight` is its probability mass.
struct BlockShape {
  double weight = 1.0;
  std::size_t dim = 1;

  friend bool operator==(const BlockShape&, const BlockShape&) = default;
};

/// Infinitely many trailing blocks of equal size whose weights decay
/// geometrically: block (prefix + j) has weight `seed_weight * ratio^j`.
struct ShapeTail {
  std::size_t dim = 1;
  double ratio = 0.5;
  double seed_weight = 0.0;

  friend bool operator==(const ShapeTail&, const ShapeTail&) = default;
};

/// The ambient algebra: a countable direct product of weighted matrix
/// blocks. Without a tail the algebra has exactly `blocks.size()` blocks;
/// with one, the block index space is all of N.
///
/// Weights are normalized to total mass 1 at construction unless they
/// already sum to 1 within 1e-12, which keeps re-parsed shapes bit-stable.
class AlgebraShape {
 public:
  explicit AlgebraShape(std::vector<BlockShape> blocks,
                        std::optional<ShapeTail> tail = std::nullopt)
      : blocks_(std::move(blocks)), tail_(tail) {
    if (blocks_.empty() && !tail_) {
      throw Error(ErrorKind::InvalidArgument, "algebra needs at least one block");
    }
    double total = 0.0;
    for (const auto& b : blocks_) {
      if (!(b.weight > 0.0) || !std::isfinite(b.weight)) {
        throw Error(ErrorKind::InvalidArgument, "block weight must be positive");
      }
      if (b.dim == 0) throw Error(ErrorKind::InvalidArgument, "block dim must be >= 1");
      total += b.weight;
    }
    if (tail_) {
      if (tail_->dim == 0) throw Error(ErrorKind::InvalidArgument, "tail dim must be >= 1");
      if (!(tail_->ratio > 0.0 && tail_->ratio < 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "tail ratio must lie in (0,1)");
      }
      if (tail_->seed_weight <= 0.0) {
        tail_->seed_weight = blocks_.empty() ? 1.0 : blocks_.back().weight * tail_->ratio;
      }
      total += tail_->seed_weight / (1.0 - tail_->ratio);
    }
    if (std::abs(total - 1.0) > 1e-12) {
      for (auto& b : blocks_) b.weight /= total;
      if (tail_) tail_->seed_weight /= total;
    }
  }

  const std::vector<BlockShape>& blocks() const noexcept { return blocks_; }
  const std::optional<ShapeTail>& tail() const noexcept { return tail_; }

  /// Number of blocks, or nullopt for an infinite (tailed) algebra.
  std::optional<std::size_t> block_count() const noexcept {
    if (tail_) return std::nullopt;
    return blocks_.size();
  }

  bool contains(std::size_t k) const noexcept { return tail_ || k < blocks_.size(); }

  std::size_t dim(std::size_t k) const {
    check(k);
    return k < blocks_.size() ? blocks_[k].dim : tail_->dim;
  }

  double weight(std::size_t k) const {
    check(k);
    if (k < blocks_.size()) return blocks_[k].weight;
    return tail_->seed_weight * std::pow(tail_->ratio, static_cast<double>(k - blocks_.size()));
  }

  /// One past the last block inspected by a horizon-H check.
  std::size_t horizon_end(std::size_t horizon) const noexcept {
    if (tail_) return horizon;
    return std::min(horizon, blocks_.size());
  }

  /// Largest block dimension among the first `horizon` blocks.
  std::size_t max_dim(std::size_t horizon) const {
    std::size_t d = 0;
    for (std::size_t k = 0; k < horizon_end(horizon); ++k) d = std::max(d, dim(k));
    return d;
  }

  friend bool operator==(const AlgebraShape&, const AlgebraShape&) = default;

 private:
  void check(std::size_t k) const {
    if (!contains(k)) {
      throw Error(ErrorKind::OutOfRange, "block index beyond a finite algebra", k);
    }
  }

  std::vector<BlockShape> blocks_;
  std::optional<ShapeTail> tail_;
};

using ShapePtr = std::shared_ptr<const AlgebraShape>;

inline ShapePtr make_shape(std::vector<BlockShape> blocks,
                           std::optional<ShapeTail> tail = std::nullopt) {
  return std::make_shared<const AlgebraShape>(std::move(blocks), tail);
}

inline bool same_shape(const ShapePtr& a, const ShapePtr& b) {
  return a == b || (a && b && *a == *b);
}

inline void require_same_shape(const ShapePtr& a, const ShapePtr& b, const char* what) {
  if (!same_shape(a, b)) throw Error(ErrorKind::ShapeMismatch, what);
}

/// Horizon and tolerances for every finite check.
struct ToleranceConfig {
  std::size_t horizon = 64;
  double eq_tol = 1e-9;
  double psd_tol = 1e-8;

  void validate() const {
    if (horizon == 0) throw Error(ErrorKind::InvalidArgument, "horizon must be >= 1");
    if (!(eq_tol > 0.0) || !(psd_tol > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");
    }
  }
};

}  // namespace afflab
