#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "afflab/algebra.hpp"
#include "afflab/error.hpp"
#include "afflab/fiber.hpp"
#include "afflab/operator.hpp"
#include "afflab/partition.hpp"

namespace afflab {

/// Center-valued trace: (1/n) tr T(k) on every block, returned in scalar
/// form. Tails are traced coefficient by coefficient.
inline CentralElement trace_affiliated(const AffiliatedOperator& t) {
  std::optional<ScalarTail> tail;
  if (t.tail()) tail = tails::map<Complex>(*t.tail(), [](const Matrix& c) { return fiber::normalized_trace(c); });
  return CentralElement(
      t.shape_ptr(), [t](std::size_t k) { return fiber::normalized_trace(t.fiber(k)); }, std::move(tail));
}

inline CentralElement trace_bounded(const BoundedElement& s) { return trace_affiliated(s.op()); }

/// Central elements are fixed by the trace.
inline const CentralElement& trace_affiliated(const CentralElement& z) { return z; }

/// Trace through a series representation: sum_l tr(S_l) Z_l. Agreement with
/// trace_affiliated(series_assemble(rep)) is independent of the chosen
/// representation.
inline CentralElement trace_via_series(const SeriesRepresentation& rep) {
  const auto& p = rep.partition;
  if (const auto* cs = std::get_if<CoefficientSeries>(&rep.data)) {
    require_same_shape(cs->base.shape_ptr(), p.shape_ptr(), "series base lives on a different algebra");
    return CentralElement(p.shape_ptr(), [p, cs = *cs](std::size_t k) {
      return cs.coeffs.at(p.label(k)) * fiber::normalized_trace(cs.base.fiber(k));
    });
  }
  const auto& fam = std::get<FamilySeries>(rep.data);
  return CentralElement(p.shape_ptr(), [p, fam](std::size_t k) {
    return fiber::normalized_trace(detail::family_member(fam, p.label(k), p.shape_ptr()).fiber(k));
  });
}

/// Worst relative gap |a(k) - b(k)| / (1 + |b(k)|) on the horizon.
inline FiberResidual max_relative_gap(const CentralElement& a, const CentralElement& b, std::size_t horizon) {
  require_same_shape(a.shape_ptr(), b.shape_ptr(), "central elements live on different algebras");
  FiberResidual worst;
  const std::size_t end = a.shape().horizon_end(horizon);
  for (std::size_t k = 0; k < end; ++k) {
    const Complex vb = b.value(k);
    const double r = std::abs(a.value(k) - vb) / (1.0 + std::abs(vb));
    if (r > worst.value || std::isnan(r)) worst = {r, k};
  }
  return worst;
}

/// One seeded draw for the axiom suite.
struct TraceSample {
  AffiliatedOperator x;
  AffiliatedOperator y;
  AffiliatedOperator psd;  ///< nonnegative, nonzero on the horizon
  CentralElement z;
  Complex alpha;
  Complex beta;
};

using TraceSampler = std::function<TraceSample(std::uint64_t seed)>;
using TraceMap = std::function<CentralElement(const AffiliatedOperator&)>;

struct AxiomResult {
  std::string axiom;
  bool pass = true;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double max_residual = 0.0;
  std::uint64_t worst_seed = 0;
  std::size_t worst_block = 0;

  void record(double residual, std::uint64_t seed, std::size_t block) {
    if (residual > max_residual || std::isnan(residual) ||
        (residual == max_residual && residual > 0.0 && seed < worst_seed)) {
      max_residual = residual;
      worst_seed = seed;
      worst_block = block;
    }
  }
};

struct TraceAxiomReport {
  std::vector<AxiomResult> axioms;

  bool pass() const {
    return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.pass; });
  }
  const AxiomResult& at(const std::string& name) const {
    for (const auto& a : axioms) {
      if (a.axiom == name) return a;
    }
    throw Error(ErrorKind::InvalidArgument, "no axiom named " + name);
  }
};

/// Runs (tr1)-(tr5) and linearity over `count` samples drawn from seeds
/// first_seed, first_seed + 1, ... Each residual is relative to the natural
/// scale of its identity; an axiom passes when its worst residual is at
/// most eq_tol.
inline TraceAxiomReport verify_trace_axioms(const TraceSampler& sampler, std::size_t count, const ToleranceConfig& cfg,
                                            std::uint64_t first_seed = 0, const TraceMap& trace = nullptr) {
  const TraceMap tr = trace ? trace : TraceMap([](const AffiliatedOperator& t) { return trace_affiliated(t); });
  AxiomResult tr1{"tr1"}, tr2{"tr2"}, tr3{"tr3"}, tr4{"tr4"}, tr5{"tr5"}, lin{"linearity"};

  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t seed = first_seed + i;
    const TraceSample s = sampler(seed);
    const std::size_t end = s.x.shape().horizon_end(cfg.horizon);
    const auto tx = tr(s.x), ty = tr(s.y), ta = tr(s.psd);
    const auto txy = tr(s.x * s.y), tyx = tr(s.y * s.x);
    const auto tz_op = tr(s.z.as_operator());
    const auto& tz_exact = trace_affiliated(s.z);
    const auto txz = tr(s.x * s.z.as_operator());
    const auto tlin = tr(s.alpha * s.x + s.beta * s.y);

    for (AxiomResult* a : {&tr1, &tr2, &tr3, &tr4, &tr5, &lin}) ++a->cases;
    for (std::size_t k = 0; k < end; ++k) {
      const Matrix x = s.x.fiber(k), y = s.y.fiber(k), a = s.psd.fiber(k);
      const double nx = x.norm(), ny = y.norm(), na = a.norm();

      // (tr1): nonnegative in, nonnegative out.
      const Complex va = ta.value(k);
      tr1.record((std::max(0.0, -va.real()) + std::abs(va.imag())) / (1.0 + na), seed, k);

      // (tr2): tracial.
      tr2.record(std::abs(txy.value(k) - tyx.value(k)) / (1.0 + nx * ny), seed, k);

      // (tr3): identity on the center, exactly in scalar form.
      const Complex zk = s.z.value(k);
      if (tz_exact.value(k) != zk) ++tr3.failures;
      tr3.record(std::abs(tz_op.value(k) - zk) / (1.0 + std::abs(zk)), seed, k);

      // (tr4): faithful; a nonzero PSD fiber has trace >= lambda_max / n > 0.
      if (na > cfg.psd_tol) {
        const double top = fiber::hermitian_eigen(a, k).values.maxCoeff();
        const double n = static_cast<double>(a.rows());
        if (!(va.real() > 0.0)) ++tr4.failures;
        tr4.record(std::max(0.0, top / n - va.real()) / (1.0 + na), seed, k);
      }

      // (tr5): central elements factor out.
      tr5.record(std::abs(txz.value(k) - tx.value(k) * zk) / (1.0 + nx * std::abs(zk)), seed, k);

      // linearity
      const Complex expect = s.alpha * tx.value(k) + s.beta * ty.value(k);
      lin.record(std::abs(tlin.value(k) - expect) / (1.0 + std::abs(s.alpha) * nx + std::abs(s.beta) * ny), seed, k);
    }
  }
  TraceAxiomReport report{{tr1, tr2, tr3, tr4, tr5, lin}};
  for (auto& a : report.axioms) a.pass = a.failures == 0 && a.max_residual <= cfg.eq_tol;
  return report;
}

struct CommutatorTraceCheck {
  double commutator_trace_max = 0.0;
  double distance_from_identity = std::numeric_limits<double>::infinity();
};

/// The trace of XY - YX vanishes on every fiber while the trace of I is 1,
/// so XY - YX stays a Frobenius distance of at least sqrt(n) from I.
inline CommutatorTraceCheck commutator_trace_check(const AffiliatedOperator& x, const AffiliatedOperator& y,
                                                   const ToleranceConfig& cfg) {
  require_same_shape(x.shape_ptr(), y.shape_ptr(), "operands live on different algebras");
  CommutatorTraceCheck out;
  const std::size_t end = x.shape().horizon_end(cfg.horizon);
  for (std::size_t k = 0; k < end; ++k) {
    const Matrix a = x.fiber(k), b = y.fiber(k);
    const Matrix c = a * b - b * a;
    out.commutator_trace_max = std::max(out.commutator_trace_max, std::abs(fiber::normalized_trace(c)));
    const auto n = static_cast<std::size_t>(c.rows());
    out.distance_from_identity = std::min(out.distance_from_identity, (c - fiber::identity(n)).norm());
  }
  return out;
}

/// Linear functionals phi(A) = sum_ij w_ij A_ij on M_n that satisfy
/// phi(AB) = phi(BA) on all matrix units and phi(I) = 1.
struct TraceFunctionalSolution {
  Matrix weights;          ///< w_ij, n x n
  Eigen::Index rank = 0;   ///< rank of the constraint system
  Eigen::Index unknowns = 0;
  double residual = 0.0;   ///< ||A w - b||
};

inline TraceFunctionalSolution solve_trace_functional(std::size_t dim) {
  if (dim == 0) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  const auto n = static_cast<Eigen::Index>(dim);
  const Eigen::Index unknowns = n * n;
  auto idx = [n](Eigen::Index i, Eigen::Index j) { return i * n + j; };

  // E_ij E_kl = delta_jk E_il, so phi(E_ij E_kl) - phi(E_kl E_ij) is
  // delta_jk w_il - delta_li w_kj.
  std::vector<Eigen::VectorXd> rows;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index l = 0; l < n; ++l) {
          Eigen::VectorXd r = Eigen::VectorXd::Zero(unknowns);
          if (j == k) r(idx(i, l)) += 1.0;
          if (l == i) r(idx(k, j)) -= 1.0;
          if (r.squaredNorm() > 0.0) rows.push_back(std::move(r));
        }
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(unknowns);
  for (Eigen::Index i = 0; i < n; ++i) unit(idx(i, i)) = 1.0;
  rows.push_back(unit);

  Eigen::MatrixXd a(static_cast<Eigen::Index>(rows.size()), unknowns);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(a.rows());
  for (Eigen::Index r = 0; r < a.rows(); ++r) a.row(r) = rows[static_cast<std::size_t>(r)].transpose();
  b(a.rows() - 1) = 1.0;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::VectorXd w = qr.solve(b);
  TraceFunctionalSolution out;
  out.rank = qr.rank();
  out.unknowns = unknowns;
  out.residual = (a * w - b).norm();
  out.weights = Matrix(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out.weights(i, j) = w(idx(i, j));
  return out;
}

}  // namespace afflab
