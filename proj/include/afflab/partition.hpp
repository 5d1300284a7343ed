#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "afflab/algebra.hpp"
#include "afflab/btransform.hpp"
#include "afflab/error.hpp"
#include "afflab/fiber.hpp"
#include "afflab/operator.hpp"

namespace afflab {

using Label = std::uint64_t;

/// How labels beyond an explicit prefix are produced; carried along for
/// serialization only.
struct PartitionRule {
  std::string kind = "custom";  // "by_norm", "constant", "refinement", "custom"
  std::string thresholds;       // for "by_norm": "dyadic", "natural", ...
  Label constant_label = 0;     // for "constant"
};

/// A central partition: every block carries exactly one label, so the
/// class projections Z_l (identity on the blocks labelled l, zero elsewhere)
/// are central, mutually orthogonal and sum to I.
class CentralPartition {
 public:
  using LabelFn = std::function<Label(std::size_t)>;

  CentralPartition(ShapePtr shape, LabelFn fn, PartitionRule rule = {})
      : shape_(std::move(shape)), fn_(std::make_shared<const LabelFn>(std::move(fn))), rule_(std::move(rule)) {}

  static CentralPartition trivial(ShapePtr shape, Label label = 0) {
    return CentralPartition(std::move(shape), [label](std::size_t) { return label; },
                            PartitionRule{"constant", {}, label});
  }

  /// Explicit labels for the prefix, `rest` for every later block.
  static CentralPartition from_labels(ShapePtr shape, std::vector<Label> prefix, Label rest) {
    auto data = std::make_shared<const std::vector<Label>>(std::move(prefix));
    return CentralPartition(
        std::move(shape), [data, rest](std::size_t k) { return k < data->size() ? (*data)[k] : rest; },
        PartitionRule{"constant", {}, rest});
  }

  Label label(std::size_t k) const {
    if (!shape_->contains(k)) throw Error(ErrorKind::OutOfRange, "block index beyond a finite algebra", k);
    return (*fn_)(k);
  }

  /// Z_l as a central element (1 on class l, 0 elsewhere).
  CentralElement projection(Label l) const {
    auto self = *this;
    return CentralElement(shape_, [self, l](std::size_t k) { return Complex(self.label(k) == l ? 1.0 : 0.0); });
  }

  const AlgebraShape& shape() const noexcept { return *shape_; }
  const ShapePtr& shape_ptr() const noexcept { return shape_; }
  const PartitionRule& rule() const noexcept { return rule_; }

 private:
  ShapePtr shape_;
  std::shared_ptr<const LabelFn> fn_;
  PartitionRule rule_;
};

/// Per-label thresholds a_l in (0,1) with supremum 1, l = 1, 2, ...
struct Thresholds {
  std::function<double(Label)> at;
  bool increasing = false;
  std::string name = "custom";

  /// a_n = 1 - 2^{-n}: the dyadic level sets [1 - 2^{1-n}, 1 - 2^{-n}).
  static Thresholds dyadic() {
    return {[](Label n) { return n >= 1075 ? 1.0 : 1.0 - std::ldexp(1.0, -static_cast<int>(n)); }, true,
            "dyadic"};
  }
};

/// Positive, unbounded coefficients c_l, l = 1, 2, ...
struct Coefficients {
  std::function<double(Label)> at;
  bool increasing = false;
  bool attested_unbounded = false;
  std::optional<double> declared_sup;
  std::string name = "custom";

  /// c_n = n.
  static Coefficients natural() {
    return {[](Label n) { return static_cast<double>(n); }, true, true, std::nullopt, "natural"};
  }

  static Coefficients custom(std::function<double(Label)> fn, bool increasing, bool attested_unbounded) {
    return {std::move(fn), increasing, attested_unbounded, std::nullopt, "custom"};
  }

  /// a_l = B(c_l) = c_l / (1 + c_l).
  Thresholds thresholds() const {
    auto fn = at;
    return {[fn](Label l) {
              const double c = fn(l);
              return c / (1.0 + c);
            },
            increasing, name};
  }
};

namespace detail {

/// Slack for comparing a fiber norm against a_l; norms computed through
/// different floating-point routes can differ from a_l by a few ulps.
inline constexpr double kBucketSlack = 8.0 * std::numeric_limits<double>::epsilon();
inline constexpr Label kMaxLabel = Label{1} << 62;

/// Minimal l >= 1 with fits(l); `increasing` allows a bisection.
template <class Fits>
Label minimal_label_where(Fits fits, bool increasing, std::size_t block) {
  if (increasing) {
    Label hi = 1;
    while (!fits(hi)) {
      if (hi >= kMaxLabel) throw Error(ErrorKind::NumericalFailure, "no threshold admits the fiber norm", block);
      hi *= 2;
    }
    Label lo = hi / 2;  // fits(lo) is false, or lo == 0
    while (hi - lo > 1) {
      const Label mid = lo + (hi - lo) / 2;
      (fits(mid) ? hi : lo) = mid;
    }
    return hi;
  }
  for (Label l = 1; l <= 10'000'000; ++l) {
    if (fits(l)) return l;
  }
  throw Error(ErrorKind::NumericalFailure, "no threshold admits the fiber norm", block);
}

/// Minimal l >= 1 with norm <= a_l.
inline Label minimal_label(double norm, const Thresholds& th, std::size_t block) {
  return minimal_label_where([&](Label l) { return norm <= th.at(l) + kBucketSlack; }, th.increasing, block);
}

/// Strict-contraction test used by partitioning: a fiber whose norm is one
/// up to a few ulps counts as norm one.
inline bool reaches_norm_one(double norm) { return norm >= 1.0 - 16.0 * std::numeric_limits<double>::epsilon(); }

inline Label cantor_pair(Label a, Label b) {
  using Wide = unsigned __int128;
  const Wide sum = Wide(a) + Wide(b);
  const Wide out = sum * (sum + 1) / 2 + Wide(b);
  if (out > Wide(std::numeric_limits<Label>::max())) {
    throw Error(ErrorKind::NumericalFailure, "label pairing overflow");
  }
  return static_cast<Label>(out);
}

}  // namespace detail

/// Raised when a fiber handed to a strict-contraction partition has norm
/// one or more. Carries the kernel witness when the norm is at most one.
class ContractionViolation : public Error {
 public:
  ContractionViolation(std::size_t block, std::optional<KernelWitness> witness)
      : Error(ErrorKind::ContractionViolation, "fiber norm is not below one", block), witness_(std::move(witness)) {}

  const std::optional<KernelWitness>& witness() const noexcept { return witness_; }

 private:
  std::optional<KernelWitness> witness_;
};

namespace detail {

inline Label contraction_label(const Matrix& f, std::size_t k, const Thresholds& th, const ToleranceConfig& cfg) {
  const double norm = fiber::spectral_norm(f);
  if (reaches_norm_one(norm)) {
    std::optional<KernelWitness> witness;
    try {
      witness = fiber_kernel_witness(f, k, cfg);
    } catch (const Error&) {
      // norm above one: no witness exists
    }
    throw ContractionViolation(k, std::move(witness));
  }
  return minimal_label(norm, th, k);
}

}  // namespace detail

/// Labels each block with the minimal l such that ||T(k)|| <= a_l, so
/// ||T Z_l|| <= a_l < 1 on every class. The horizon is checked eagerly;
/// later blocks are labelled (and checked) on demand.
inline CentralPartition strict_contraction_partition(const BoundedElement& t, const Thresholds& th,
                                                     const ToleranceConfig& cfg) {
  const std::size_t end = t.shape().horizon_end(cfg.horizon);
  std::vector<Label> labels;
  labels.reserve(end);
  for (std::size_t k = 0; k < end; ++k) labels.push_back(detail::contraction_label(t.fiber(k), k, th, cfg));
  auto cached = std::make_shared<const std::vector<Label>>(std::move(labels));
  const auto op = t.op();
  return CentralPartition(
      t.shape_ptr(),
      [cached, op, th, cfg](std::size_t k) {
        return k < cached->size() ? (*cached)[k] : detail::contraction_label(op.fiber(k), k, th, cfg);
      },
      PartitionRule{"by_norm", th.name, 0});
}

/// Sum_l S_l Z_l: one bounded element per label. Members are looked up
/// lazily; an absent label raises MissingFamilyMember.
struct FamilySeries {
  std::function<std::optional<AffiliatedOperator>(Label)> member;

  static FamilySeries from_map(std::map<Label, AffiliatedOperator> members) {
    auto data = std::make_shared<const std::map<Label, AffiliatedOperator>>(std::move(members));
    return {[data](Label l) -> std::optional<AffiliatedOperator> {
      auto it = data->find(l);
      if (it == data->end()) return std::nullopt;
      return it->second;
    }};
  }
};

/// Sum_l c_l S Z_l with one bounded base S.
struct CoefficientSeries {
  Coefficients coeffs;
  BoundedElement base;
};

struct SeriesRepresentation {
  CentralPartition partition;
  std::variant<FamilySeries, CoefficientSeries> data;
};

namespace detail {

inline AffiliatedOperator family_member(const FamilySeries& fam, Label l, const ShapePtr& shape) {
  auto m = fam.member(l);
  if (!m) throw Error(ErrorKind::MissingFamilyMember, "no family member for label " + std::to_string(l));
  require_same_shape(m->shape_ptr(), shape, "family member lives on a different algebra");
  return *m;
}

}  // namespace detail

/// The operator whose fiber at k is the data evaluated at (label(k), k).
inline AffiliatedOperator series_assemble(const SeriesRepresentation& rep) {
  const auto& p = rep.partition;
  if (const auto* cs = std::get_if<CoefficientSeries>(&rep.data)) {
    require_same_shape(cs->base.shape_ptr(), p.shape_ptr(), "series base lives on a different algebra");
    return AffiliatedOperator(p.shape_ptr(), [p, cs = *cs](std::size_t k) -> Matrix {
      return cs.coeffs.at(p.label(k)) * cs.base.fiber(k);
    });
  }
  const auto& fam = std::get<FamilySeries>(rep.data);
  return AffiliatedOperator(p.shape_ptr(), [p, fam](std::size_t k) -> Matrix {
    return detail::family_member(fam, p.label(k), p.shape_ptr()).fiber(k);
  });
}

/// Writes T = sum_l c_l S Z_l. The partition buckets B(T) by the thresholds
/// a_l = c_l / (1 + c_l); on class l the base is S(k) = UB(B(T)(k)) / c_l
/// = T(k) / c_l, whose norm is at most UB(a_l) / c_l = 1.
inline SeriesRepresentation affiliated_decompose(const AffiliatedOperator& t, const Coefficients& coeffs,
                                                 const ToleranceConfig& cfg) {
  if (coeffs.declared_sup && std::isfinite(*coeffs.declared_sup)) {
    throw Error(ErrorKind::CoefficientSetBounded, "coefficient set has a finite supremum");
  }
  if (!coeffs.attested_unbounded) {
    throw Error(ErrorKind::CoefficientSetBounded, "coefficient set is not attested to be unbounded");
  }
  // ||B(T)(k)|| = f(||T(k)||) with f(x) = x / (1 + x) increasing, so
  // ||B(T)(k)|| <= B(c_l) iff ||T(k)|| <= c_l. Comparing before the
  // transform keeps labels exact where B would round a_l and the norm together.
  const auto c = coeffs;
  auto label_of = [c](const Matrix& f, std::size_t k) {
    const double norm = fiber::spectral_norm(f);
    if (!std::isfinite(norm)) throw Error(ErrorKind::NumericalFailure, "fiber norm is not finite", k);
    return detail::minimal_label_where([&](Label l) { return norm <= c.at(l); }, c.increasing, k);
  };
  const std::size_t end = t.shape().horizon_end(cfg.horizon);
  std::vector<Label> labels;
  labels.reserve(end);
  for (std::size_t k = 0; k < end; ++k) labels.push_back(label_of(t.fiber(k), k));
  auto cached = std::make_shared<const std::vector<Label>>(std::move(labels));
  CentralPartition partition(
      t.shape_ptr(),
      [cached, t, label_of](std::size_t k) { return k < cached->size() ? (*cached)[k] : label_of(t.fiber(k), k); },
      PartitionRule{"by_norm", coeffs.name, 0});
  const auto p = partition;
  auto base = AffiliatedOperator(t.shape_ptr(), [p, c, t](std::size_t k) -> Matrix {
    const double ck = c.at(p.label(k));
    if (!(ck > 0.0)) throw Error(ErrorKind::InvalidArgument, "coefficients must be positive", k);
    return t.fiber(k) / ck;
  });
  return {std::move(partition), CoefficientSeries{coeffs, BoundedElement::trusted(std::move(base), 1.0)}};
}

/// Simultaneous decomposition T_j = sum_nu nu_j S_j Z_nu over tuple labels.
struct CommonDecomposition {
  std::vector<SeriesRepresentation> components;  ///< per operand, c_n = n
  CentralPartition partition;                    ///< tuple labels flattened by Cantor pairing

  std::vector<Label> tuple_label(std::size_t k) const {
    std::vector<Label> out;
    out.reserve(components.size());
    for (const auto& c : components) out.push_back(c.partition.label(k));
    return out;
  }

  const BoundedElement& base(std::size_t j) const { return std::get<CoefficientSeries>(components.at(j).data).base; }
};

/// Flattens a label tuple into one label (Cantor pairing folded left).
inline Label flatten_labels(const std::vector<Label>& tuple) {
  if (tuple.empty()) throw Error(ErrorKind::InvalidArgument, "empty label tuple");
  Label acc = tuple.front();
  for (std::size_t i = 1; i < tuple.size(); ++i) acc = detail::cantor_pair(acc, tuple[i]);
  return acc;
}

/// Common refinement: each block is labelled by the flattened tuple of its
/// input labels, so each input label is a function of the output label.
inline CentralPartition partition_refine(const std::vector<CentralPartition>& parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "nothing to refine");
  for (const auto& p : parts) require_same_shape(p.shape_ptr(), parts.front().shape_ptr(), "partitions differ in shape");
  return CentralPartition(
      parts.front().shape_ptr(),
      [parts](std::size_t k) {
        std::vector<Label> tuple;
        tuple.reserve(parts.size());
        for (const auto& p : parts) tuple.push_back(p.label(k));
        return flatten_labels(tuple);
      },
      PartitionRule{"refinement", {}, 0});
}

inline CommonDecomposition common_decompose(const std::vector<AffiliatedOperator>& ops, const ToleranceConfig& cfg) {
  if (ops.empty()) throw Error(ErrorKind::InvalidArgument, "common decomposition needs at least one operator");
  std::vector<SeriesRepresentation> comps;
  std::vector<CentralPartition> parts;
  for (const auto& t : ops) {
    require_same_shape(t.shape_ptr(), ops.front().shape_ptr(), "operators differ in shape");
    comps.push_back(affiliated_decompose(t, Coefficients::natural(), cfg));
    parts.push_back(comps.back().partition);
  }
  auto refined = partition_refine(parts);
  return {std::move(comps), std::move(refined)};
}

/// T Z_l: the fibers of T on class l, zero elsewhere.
inline AffiliatedOperator restrict_to_class(const AffiliatedOperator& t, const CentralPartition& p, Label l) {
  require_same_shape(t.shape_ptr(), p.shape_ptr(), "partition lives on a different algebra");
  return t * p.projection(l).as_operator();
}

/// Sum_l T_l Z_l with T_l = T Z_l; reproduces T fiber for fiber.
inline AffiliatedOperator restrict_and_reassemble(const AffiliatedOperator& t, const CentralPartition& p,
                                                  const ToleranceConfig& cfg) {
  require_same_shape(t.shape_ptr(), p.shape_ptr(), "partition lives on a different algebra");
  FamilySeries fam{[t, p](Label l) -> std::optional<AffiliatedOperator> { return restrict_to_class(t, p, l); }};
  auto out = series_assemble({p, std::move(fam)});
  const std::size_t end = t.shape().horizon_end(cfg.horizon);
  for (std::size_t k = 0; k < end; ++k) {
    if (!out.fiber(k).allFinite()) throw Error(ErrorKind::NumericalFailure, "class restriction is not finite", k);
  }
  return out;
}

}  // namespace afflab
