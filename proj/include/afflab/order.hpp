#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "afflab/algebra.hpp"
#include "afflab/error.hpp"
#include "afflab/fiber.hpp"
#include "afflab/operator.hpp"
#include "afflab/trace.hpp"

namespace afflab {

/// A <= B iff B - A is nonnegative. The eigenvalue floor is -psd_tol
/// scaled by max(1, ||A(k)||, ||B(k)||).
inline bool leq(const AffiliatedOperator& a, const AffiliatedOperator& b, const ToleranceConfig& cfg) {
  require_same_shape(a.shape_ptr(), b.shape_ptr(), "operands live on different algebras");
  const std::size_t end = a.shape().horizon_end(cfg.horizon);
  for (std::size_t k = 0; k < end; ++k) {
    const Matrix fa = a.fiber(k), fb = b.fiber(k);
    if (!fiber::is_hermitian(fa, cfg.eq_tol) || !fiber::is_hermitian(fb, cfg.eq_tol)) {
      throw Error(ErrorKind::NotSelfAdjoint, "order is defined on self-adjoint operators", k);
    }
  }
  for (std::size_t k = 0; k < end; ++k) {
    const Matrix fa = a.fiber(k), fb = b.fiber(k);
    if (!fiber::is_psd(fb - fa, cfg.psd_tol, k, std::max(fa.norm(), fb.norm()))) return false;
  }
  return true;
}

/// For commuting nonnegative A and B the product AB is nonnegative.
/// Returns the outcome of that check; false would indicate a defect.
inline bool positive_product_check(const AffiliatedOperator& a, const AffiliatedOperator& b,
                                   const ToleranceConfig& cfg) {
  require_same_shape(a.shape_ptr(), b.shape_ptr(), "operands live on different algebras");
  if (!is_nonnegative(a, cfg) || !is_nonnegative(b, cfg)) {
    throw Error(ErrorKind::NotPositive, "both factors must be nonnegative");
  }
  const std::size_t end = a.shape().horizon_end(cfg.horizon);
  for (std::size_t k = 0; k < end; ++k) {
    const Matrix fa = a.fiber(k), fb = b.fiber(k);
    if ((fa * fb - fb * fa).norm() > cfg.eq_tol * (1.0 + fa.norm() * fb.norm())) {
      throw Error(ErrorKind::NotCommuting, "factors do not commute", k);
    }
  }
  return is_nonnegative(a * b, cfg);
}

/// Serialization tag for the rule producing chain terms past the prefix.
struct ChainRule {
  std::string kind = "custom";  // "geometric_approach", "truncation", "custom"
  std::vector<AffiliatedOperator> prefix;
  std::optional<AffiliatedOperator> target;  // the limit (geometric) or truncated operator
};

/// An increasing sequence of self-adjoint operators majorized by
/// `declared_bound`; term(m, k) is the fiber of the m-th term at block k.
class OperatorChain {
 public:
  using TermFn = std::function<Matrix(std::size_t m, std::size_t k)>;

  OperatorChain(ShapePtr shape, TermFn term, AffiliatedOperator declared_bound, ChainRule rule = {})
      : shape_(std::move(shape)),
        term_(std::make_shared<const TermFn>(std::move(term))),
        bound_(std::move(declared_bound)),
        rule_(std::move(rule)) {
    require_same_shape(shape_, bound_.shape_ptr(), "chain bound lives on a different algebra");
  }

  /// Terms past the prefix approach `limit` geometrically: with last
  /// prefix term P, term(m) = L - 2^{-(m-p+1)} (L - P); with no prefix,
  /// term(m) = (1 - 2^{-m}) L.
  static OperatorChain geometric_approach(std::vector<AffiliatedOperator> prefix, AffiliatedOperator limit,
                                          AffiliatedOperator declared_bound) {
    auto shape = limit.shape_ptr();
    for (const auto& t : prefix) require_same_shape(t.shape_ptr(), shape, "chain term lives on a different algebra");
    auto terms = std::make_shared<const std::vector<AffiliatedOperator>>(prefix);
    TermFn fn = [terms, limit](std::size_t m, std::size_t k) -> Matrix {
      const std::size_t p = terms->size();
      if (m < p) return (*terms)[m].fiber(k);
      const Matrix l = limit.fiber(k);
      if (p == 0) return (1.0 - std::ldexp(1.0, -static_cast<int>(m))) * l;
      const Matrix last = terms->back().fiber(k);
      return l - std::ldexp(1.0, -static_cast<int>(m - p + 1)) * (l - last);
    };
    return OperatorChain(shape, std::move(fn), std::move(declared_bound),
                         ChainRule{"geometric_approach", std::move(prefix), std::move(limit)});
  }

  /// Terms past the prefix are the spectral truncations min(target, m).
  static OperatorChain truncation(std::vector<AffiliatedOperator> prefix, AffiliatedOperator target,
                                  AffiliatedOperator declared_bound) {
    auto shape = target.shape_ptr();
    for (const auto& t : prefix) require_same_shape(t.shape_ptr(), shape, "chain term lives on a different algebra");
    auto terms = std::make_shared<const std::vector<AffiliatedOperator>>(prefix);
    TermFn fn = [terms, target](std::size_t m, std::size_t k) -> Matrix {
      if (m < terms->size()) return (*terms)[m].fiber(k);
      const double level = static_cast<double>(m);
      return fiber::hermitian_function(target.fiber(k), [level](double x) { return std::min(x, level); }, k);
    };
    return OperatorChain(shape, std::move(fn), std::move(declared_bound),
                         ChainRule{"truncation", std::move(prefix), std::move(target)});
  }

  Matrix term(std::size_t m, std::size_t k) const { return (*term_)(m, k); }

  AffiliatedOperator term_operator(std::size_t m) const {
    auto fn = term_;
    return AffiliatedOperator(shape_, [fn, m](std::size_t k) -> Matrix { return (*fn)(m, k); });
  }

  const AffiliatedOperator& declared_bound() const noexcept { return bound_; }
  const AlgebraShape& shape() const noexcept { return *shape_; }
  const ShapePtr& shape_ptr() const noexcept { return shape_; }
  const ChainRule& rule() const noexcept { return rule_; }

 private:
  ShapePtr shape_;
  std::shared_ptr<const TermFn> term_;
  AffiliatedOperator bound_;
  ChainRule rule_;
};

struct ChainLimitOptions {
  std::size_t max_steps = 10'000;
  std::size_t patience = 2;  ///< consecutive sub-floor increments required
};

namespace detail {

/// hi - lo >= 0 up to rounding at the operands' scale.
inline bool psd_within(const Matrix& hi, const Matrix& lo, const ToleranceConfig& cfg, std::size_t k) {
  return fiber::is_psd(hi - lo, cfg.psd_tol, k, std::max(hi.norm(), lo.norm()));
}

/// Limit of term(m, k) in m with validation of the chain invariants.
inline Matrix chain_limit_fiber(const OperatorChain& chain, std::size_t k, const ToleranceConfig& cfg,
                                const ChainLimitOptions& opt) {
  const Matrix bound = chain.declared_bound().fiber(k);
  auto check_term = [&](const Matrix& t, std::size_t m) {
    if (!fiber::is_hermitian(t, cfg.eq_tol)) throw Error(ErrorKind::NotSelfAdjoint, "chain term is not Hermitian", k, m);
    if (!psd_within(bound, t, cfg, k)) throw Error(ErrorKind::BoundViolation, "chain term exceeds its bound", k, m);
  };
  Matrix prev = chain.term(0, k);
  check_term(prev, 0);
  std::size_t quiet = 0;
  for (std::size_t m = 1; m <= opt.max_steps; ++m) {
    Matrix cur = chain.term(m, k);
    check_term(cur, m);
    const Matrix inc = cur - prev;
    if (!psd_within(cur, prev, cfg, k)) throw Error(ErrorKind::MonotonicityViolation, "chain is not increasing", k, m);
    quiet = inc.norm() <= cfg.eq_tol * (1.0 + cur.norm()) ? quiet + 1 : 0;
    if (quiet >= opt.patience) return cur;
    prev = std::move(cur);
  }
  throw Error(ErrorKind::NoConvergenceWithinBudget, "chain did not settle within the step budget", k);
}

/// Limit of the scalar sequence (1/n) tr term(m, k).
inline Complex chain_trace_limit(const OperatorChain& chain, std::size_t k, const ToleranceConfig& cfg,
                                 const ChainLimitOptions& opt) {
  Complex prev = fiber::normalized_trace(chain.term(0, k));
  std::size_t quiet = 0;
  for (std::size_t m = 1; m <= opt.max_steps; ++m) {
    const Complex cur = fiber::normalized_trace(chain.term(m, k));
    quiet = std::abs(cur - prev) <= cfg.eq_tol * (1.0 + std::abs(cur)) ? quiet + 1 : 0;
    if (quiet >= opt.patience) return cur;
    prev = cur;
  }
  throw Error(ErrorKind::NoConvergenceWithinBudget, "trace sequence did not settle within the step budget", k);
}

}  // namespace detail

/// Least upper bound of the chain: on each block the monotone bounded
/// Hermitian sequence converges, and its limit is the supremum there.
/// Horizon fibers are computed (and the chain validated) eagerly.
inline AffiliatedOperator chain_sup(const OperatorChain& chain, const ToleranceConfig& cfg,
                                    const ChainLimitOptions& opt = {}) {
  const std::size_t end = chain.shape().horizon_end(cfg.horizon);
  std::vector<Matrix> fibers;
  fibers.reserve(end);
  for (std::size_t k = 0; k < end; ++k) fibers.push_back(detail::chain_limit_fiber(chain, k, cfg, opt));
  auto cached = std::make_shared<const std::vector<Matrix>>(std::move(fibers));
  return AffiliatedOperator(chain.shape_ptr(), [cached, chain, cfg, opt](std::size_t k) -> Matrix {
    return k < cached->size() ? (*cached)[k] : detail::chain_limit_fiber(chain, k, cfg, opt);
  });
}

struct NormalityResult {
  CentralElement lhs;  ///< sup_m tr(term m)
  CentralElement rhs;  ///< tr(sup_m term m)
  double max_residual = 0.0;
  std::size_t worst_block = 0;
};

/// Compares the limit of the traces with the trace of the limit.
inline NormalityResult normality_check(const OperatorChain& chain, const ToleranceConfig& cfg,
                                       const ChainLimitOptions& opt = {}) {
  const auto sup = chain_sup(chain, cfg, opt);
  const std::size_t end = chain.shape().horizon_end(cfg.horizon);
  std::vector<Complex> limits;
  limits.reserve(end);
  for (std::size_t k = 0; k < end; ++k) limits.push_back(detail::chain_trace_limit(chain, k, cfg, opt));
  auto cached = std::make_shared<const std::vector<Complex>>(std::move(limits));
  CentralElement lhs(chain.shape_ptr(), [cached, chain, cfg, opt](std::size_t k) {
    return k < cached->size() ? (*cached)[k] : detail::chain_trace_limit(chain, k, cfg, opt);
  });
  auto rhs = trace_affiliated(sup);
  const auto gap = max_relative_gap(lhs, rhs, cfg.horizon);
  return {std::move(lhs), std::move(rhs), gap.value, gap.block};
}

}  // namespace afflab
