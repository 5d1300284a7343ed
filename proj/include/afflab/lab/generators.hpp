#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "afflab/algebra.hpp"
#include "afflab/error.hpp"
#include "afflab/fiber.hpp"
#include "afflab/lab/random.hpp"
#include "afflab/operator.hpp"
#include "afflab/order.hpp"
#include "afflab/shape.hpp"

namespace afflab::lab {

enum class WeightScheme { uniform, geometric, random };

struct TailParams {
  std::size_t dim = 1;
  double ratio = 0.5;
};

struct ShapeParams {
  std::size_t block_count = 4;
  std::size_t dim_min = 1;
  std::size_t dim_max = 3;
  WeightScheme weights = WeightScheme::uniform;
  std::optional<TailParams> tail;
};

enum class OperatorKind { bounded, affiliated_polynomial, psd, self_adjoint, central, chain };

struct OperatorProfile {
  OperatorKind kind = OperatorKind::bounded;
  double norm = 1.0;        ///< for bounded
  std::size_t degree = 1;   ///< tail degree for the unbounded kinds
};

/// Identical profiles yield identical objects.
struct GeneratorProfile {
  std::uint64_t seed = 0;
  ShapeParams shape;
  OperatorProfile op;

  static constexpr std::size_t kMaxDegree = 4;

  void validate() const {
    const auto& s = shape;
    if (s.dim_min == 0 || s.dim_min > s.dim_max) throw Error(ErrorKind::InvalidProfile, "dimension range is empty");
    if (s.dim_max > 16) throw Error(ErrorKind::InvalidProfile, "block dimensions are capped at 16");
    if (s.block_count == 0 && !s.tail) throw Error(ErrorKind::InvalidProfile, "algebra needs a block or a tail");
    if (s.tail && (s.tail->dim == 0 || !(s.tail->ratio > 0.0 && s.tail->ratio < 1.0))) {
      throw Error(ErrorKind::InvalidProfile, "tail needs dim >= 1 and ratio in (0,1)");
    }
    if (!(op.norm > 0.0) || !std::isfinite(op.norm)) throw Error(ErrorKind::InvalidProfile, "norm must be positive");
    if (op.degree > kMaxDegree) throw Error(ErrorKind::InvalidProfile, "degree is capped at 4");
  }
};

inline const char* to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::bounded: return "bounded";
    case OperatorKind::affiliated_polynomial: return "affiliated_polynomial";
    case OperatorKind::psd: return "psd";
    case OperatorKind::self_adjoint: return "self_adjoint";
    case OperatorKind::central: return "central";
    case OperatorKind::chain: return "chain";
  }
  return "bounded";
}

inline OperatorKind operator_kind_from_string(const std::string& s) {
  for (auto k : {OperatorKind::bounded, OperatorKind::affiliated_polynomial, OperatorKind::psd,
                 OperatorKind::self_adjoint, OperatorKind::central, OperatorKind::chain}) {
    if (s == to_string(k)) return k;
  }
  throw Error(ErrorKind::InvalidProfile, "unknown operator kind '" + s + "'");
}

inline ShapePtr gen_algebra(const GeneratorProfile& profile) {
  profile.validate();
  Rng rng(derive_seed(profile.seed, 1));
  const auto& p = profile.shape;
  std::vector<BlockShape> blocks;
  for (std::size_t k = 0; k < p.block_count; ++k) {
    const auto dim = static_cast<std::size_t>(rng.integer(p.dim_min, p.dim_max));
    double w = 1.0;
    switch (p.weights) {
      case WeightScheme::uniform: w = 1.0; break;
      case WeightScheme::geometric: w = std::ldexp(1.0, -static_cast<int>(k + 1)); break;
      case WeightScheme::random: w = rng.uniform(0.1, 1.0); break;
    }
    blocks.push_back({w, dim});
  }
  std::optional<ShapeTail> tail;
  if (p.tail) tail = ShapeTail{p.tail->dim, p.tail->ratio, 0.0};
  return make_shape(std::move(blocks), tail);
}

namespace detail {

inline Matrix gaussian_matrix(Rng& rng, std::size_t n) {
  const auto d = static_cast<Eigen::Index>(n);
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.complex_gaussian();
  return m;
}

/// Gaussian fiber rescaled to spectral norm `target`.
inline Matrix matrix_with_norm(Rng& rng, std::size_t n, double target) {
  Matrix m = gaussian_matrix(rng, n);
  const double s = fiber::spectral_norm(m);
  return s > 0.0 ? Matrix(m * (target / s)) : m;
}

/// Random fibers growing like (1 + k)^degree, with a degree-`degree`
/// polynomial tail on tailed algebras.
inline AffiliatedOperator polynomial_operator(const ShapePtr& shape, Rng& rng, std::size_t degree) {
  std::vector<Matrix> prefix;
  for (std::size_t k = 0; k < shape->blocks().size(); ++k) {
    prefix.push_back(gaussian_matrix(rng, shape->dim(k)) * std::pow(1.0 + static_cast<double>(k), degree));
  }
  std::optional<MatrixTail> tail;
  if (shape->tail()) {
    MatrixTail t{prefix.size(), {}};
    for (std::size_t p = 0; p <= degree; ++p) t.coeffs.push_back(gaussian_matrix(rng, shape->tail()->dim));
    tail = std::move(t);
  }
  return AffiliatedOperator::from_prefix(shape, std::move(prefix), std::move(tail));
}

inline BoundedElement bounded_operator(const ShapePtr& shape, Rng& rng, double norm) {
  std::vector<Matrix> prefix;
  for (std::size_t k = 0; k < shape->blocks().size(); ++k) {
    prefix.push_back(matrix_with_norm(rng, shape->dim(k), norm * rng.uniform(0.05, 0.95)));
  }
  std::optional<MatrixTail> tail;
  if (shape->tail()) {
    tail = MatrixTail{prefix.size(), {matrix_with_norm(rng, shape->tail()->dim, norm * rng.uniform(0.05, 0.95))}};
  }
  return BoundedElement::trusted(AffiliatedOperator::from_prefix(shape, std::move(prefix), std::move(tail)), norm);
}

inline CentralElement central_element(const ShapePtr& shape, Rng& rng, std::size_t degree) {
  std::vector<Complex> prefix;
  for (std::size_t k = 0; k < shape->blocks().size(); ++k) {
    prefix.push_back(rng.complex_gaussian() * std::pow(1.0 + static_cast<double>(k), degree));
  }
  std::optional<ScalarTail> tail;
  if (shape->tail()) {
    ScalarTail t{prefix.size(), {}};
    for (std::size_t p = 0; p <= degree; ++p) t.coeffs.push_back(rng.complex_gaussian());
    tail = std::move(t);
  }
  return CentralElement::from_prefix(shape, std::move(prefix), std::move(tail));
}

}  // namespace detail

inline BoundedElement gen_bounded(const ShapePtr& shape, const GeneratorProfile& profile) {
  profile.validate();
  Rng rng(derive_seed(profile.seed, 2));
  return detail::bounded_operator(shape, rng, profile.op.norm);
}

inline CentralElement gen_central(const ShapePtr& shape, const GeneratorProfile& profile) {
  profile.validate();
  Rng rng(derive_seed(profile.seed, 2));
  return detail::central_element(shape, rng, profile.op.degree);
}

/// Operators for every kind but `chain` (see gen_chain). Random fibers are
/// complex Gaussian; psd draws are X* X and self_adjoint draws X + X*.
inline AffiliatedOperator gen_operator(const ShapePtr& shape, const GeneratorProfile& profile) {
  profile.validate();
  Rng rng(derive_seed(profile.seed, 2));
  switch (profile.op.kind) {
    case OperatorKind::bounded: return detail::bounded_operator(shape, rng, profile.op.norm).op();
    case OperatorKind::affiliated_polynomial: return detail::polynomial_operator(shape, rng, profile.op.degree);
    case OperatorKind::psd: {
      const auto x = detail::polynomial_operator(shape, rng, profile.op.degree);
      return adjoint(x) * x;
    }
    case OperatorKind::self_adjoint: {
      const auto x = detail::polynomial_operator(shape, rng, profile.op.degree);
      return x + adjoint(x);
    }
    case OperatorKind::central: return detail::central_element(shape, rng, profile.op.degree).as_operator();
    case OperatorKind::chain: break;
  }
  throw Error(ErrorKind::InvalidProfile, "chain profiles produce an OperatorChain; use gen_chain");
}

/// A majorized increasing chain. Geometric chains approach a nonnegative
/// limit X* X; truncation chains clip a self-adjoint target from above
/// at the chain index. The declared bound is the limit plus a random
/// nonnegative slack (sometimes none).
inline OperatorChain gen_chain(const ShapePtr& shape, const GeneratorProfile& profile) {
  profile.validate();
  Rng rng(derive_seed(profile.seed, 3));
  auto slack = [&]() {
    if (rng.coin(0.25)) return AffiliatedOperator::zero(shape);
    const auto r = detail::bounded_operator(shape, rng, 1.0).op();
    return adjoint(r) * r;
  };
  if (rng.coin()) {
    const auto x = detail::polynomial_operator(shape, rng, profile.op.degree);
    const auto limit = adjoint(x) * x;
    std::vector<AffiliatedOperator> prefix;
    if (rng.coin()) {
      const auto q = detail::bounded_operator(shape, rng, 1.0).op();
      prefix.push_back(limit - adjoint(q) * q);
    }
    auto bound = limit + slack();
    return OperatorChain::geometric_approach(std::move(prefix), limit, std::move(bound));
  }
  const auto x = detail::polynomial_operator(shape, rng, std::min<std::size_t>(profile.op.degree, 1));
  const auto target = x + adjoint(x);
  auto bound = target + slack();
  return OperatorChain::truncation({}, target, std::move(bound));
}

using Generated = std::variant<AffiliatedOperator, OperatorChain>;

inline Generated generate(const ShapePtr& shape, const GeneratorProfile& profile) {
  if (profile.op.kind == OperatorKind::chain) return gen_chain(shape, profile);
  return gen_operator(shape, profile);
}

/// Shape parameters drawn for one test case: about half finite algebras,
/// half with a geometric tail.
inline ShapeParams random_case_shape(Rng& rng, std::size_t dim_max = 4) {
  ShapeParams p;
  p.dim_min = 1;
  p.dim_max = dim_max;
  p.weights = WeightScheme::random;
  if (rng.coin()) {
    p.block_count = rng.integer(1, 6);
  } else {
    p.block_count = rng.integer(0, 3);
    p.tail = TailParams{static_cast<std::size_t>(rng.integer(1, dim_max)), 0.5};
  }
  return p;
}

}  // namespace afflab::lab
