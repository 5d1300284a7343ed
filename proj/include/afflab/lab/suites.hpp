#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "afflab/algebra.hpp"
#include "afflab/btransform.hpp"
#include "afflab/error.hpp"
#include "afflab/lab/generators.hpp"
#include "afflab/lab/random.hpp"
#include "afflab/order.hpp"
#include "afflab/partition.hpp"
#include "afflab/trace.hpp"

namespace afflab::lab {

inline constexpr const char* kVersion = "1.0.0";

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> names = {"core_laws",    "b_roundtrip", "fin1_partition", "aff_decompose",
                                                 "trace_axioms", "lem_valid",   "center",         "heisenberg",
                                                 "order",        "normality"};
  return names;
}

struct SuiteConfig {
  std::vector<std::string> suites = all_suites();
  ToleranceConfig cfg;
  std::size_t sample_count = 200;
  std::uint64_t seed = 7;
  unsigned threads = 0;             ///< 0: AFFLAB_THREADS or hardware concurrency
  double trace_perturbation = 0.0;  ///< fault injection for the trace suite

  void validate() const {
    if (suites.empty()) throw Error(ErrorKind::InvalidProfile, "no suites selected");
    for (const auto& s : suites) {
      if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end()) {
        throw Error(ErrorKind::InvalidProfile, "unknown suite '" + s + "'");
      }
    }
    if (sample_count == 0) throw Error(ErrorKind::InvalidProfile, "sample count must be positive");
    try {
      cfg.validate();
    } catch (const Error& e) {
      throw Error(ErrorKind::InvalidProfile, e.what());
    }
  }
};

struct SuiteResult {
  std::string name;
  bool pass = true;
  std::size_t cases = 0;
  std::size_t errors = 0;    ///< cases that raised
  std::size_t failures = 0;  ///< failed boolean checks
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::uint64_t worst_seed = 0;
  std::size_t worst_block = 0;
  std::string first_error;
  std::vector<AxiomResult> axioms;  ///< trace_axioms only
};

struct SuiteReport {
  std::vector<SuiteResult> suites;
  ToleranceConfig cfg;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;

  bool pass() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.pass; });
  }
};

namespace detail {

/// What one case contributes: its worst residual and failed checks.
struct CaseOutcome {
  double residual = 0.0;
  std::size_t block = 0;
  std::size_t failures = 0;
  std::optional<std::string> error;

  void observe(double r, std::size_t k) {
    if (r > residual || std::isnan(r)) {
      residual = r;
      block = k;
    }
  }
  void check(bool ok) {
    if (!ok) ++failures;
  }
};

inline unsigned thread_count(unsigned requested) {
  unsigned n = requested;
  if (n == 0) {
    if (const char* env = std::getenv("AFFLAB_THREADS")) n = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

/// Runs case(i) for i < count across threads. Outcomes are stored per
/// index, so the reduction is independent of scheduling.
inline std::vector<CaseOutcome> run_cases(std::size_t count, unsigned threads,
                                          const std::function<CaseOutcome(std::size_t)>& fn) {
  std::vector<CaseOutcome> out(count);
  auto guarded = [&](std::size_t i) {
    try {
      out[i] = fn(i);
    } catch (const std::exception& e) {
      out[i].error = e.what();
    }
  };
  const unsigned n = std::min<unsigned>(thread_count(threads), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
  if (n <= 1) {
    for (std::size_t i = 0; i < count; ++i) guarded(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) guarded(i);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

inline std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

inline std::uint64_t case_seed(const SuiteConfig& c, const std::string& suite, std::size_t i) {
  return derive_seed(c.seed, name_hash(suite) + i);
}

inline SuiteResult reduce(const std::string& name, double tolerance, const std::vector<CaseOutcome>& cases,
                          const std::function<std::uint64_t(std::size_t)>& seed_of) {
  SuiteResult r;
  r.name = name;
  r.tolerance = tolerance;
  r.cases = cases.size();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    if (c.error) {
      if (r.errors++ == 0) {
        r.first_error = *c.error;
        r.worst_seed = seed_of(i);
      }
      continue;
    }
    r.failures += c.failures;
    if (c.residual > r.max_residual || std::isnan(c.residual)) {
      r.max_residual = c.residual;
      r.worst_seed = seed_of(i);
      r.worst_block = c.block;
    }
  }
  r.pass = r.errors == 0 && r.failures == 0 && r.max_residual <= tolerance;
  return r;
}

/// Shape and operator drawn for one case; `degree` < 0 selects a bounded draw.
struct CaseRng {
  explicit CaseRng(std::uint64_t seed) : rng(seed), seed(seed) {}

  ShapePtr shape(std::size_t dim_min = 1, std::size_t dim_max = 4) {
    GeneratorProfile p;
    p.seed = rng.integer(0, std::numeric_limits<std::uint64_t>::max() - 1);
    p.shape = random_case_shape(rng, dim_max);
    p.shape.dim_min = dim_min;
    if (p.shape.tail) p.shape.tail->dim = std::max(p.shape.tail->dim, dim_min);
    return gen_algebra(p);
  }

  AffiliatedOperator op(const ShapePtr& s, OperatorKind kind, std::size_t degree, double norm = 1.0) {
    GeneratorProfile p;
    p.seed = rng.integer(0, std::numeric_limits<std::uint64_t>::max() - 1);
    p.op = {kind, norm, degree};
    return gen_operator(s, p);
  }

  /// Mixed bounded / unbounded draw.
  AffiliatedOperator mixed(const ShapePtr& s, std::size_t max_degree = 2) {
    if (rng.coin(0.3)) return op(s, OperatorKind::bounded, 0, rng.uniform(0.1, 10.0));
    return op(s, OperatorKind::affiliated_polynomial, rng.integer(0, max_degree));
  }

  CentralElement central(const ShapePtr& s, std::size_t degree) {
    GeneratorProfile p;
    p.seed = rng.integer(0, std::numeric_limits<std::uint64_t>::max() - 1);
    p.op = {OperatorKind::central, 1.0, degree};
    return gen_central(s, p);
  }

  OperatorChain chain(const ShapePtr& s, std::size_t degree) {
    GeneratorProfile p;
    p.seed = rng.integer(0, std::numeric_limits<std::uint64_t>::max() - 1);
    p.op = {OperatorKind::chain, 1.0, degree};
    return gen_chain(s, p);
  }

  Rng rng;
  std::uint64_t seed;
};

}  // namespace detail

// ---- individual suites; each returns one case outcome per seed ----

namespace suites {

using detail::CaseOutcome;
using detail::CaseRng;

/// Ring laws, involution, centrality and positivity of X* X, kernel witness.
inline CaseOutcome core_laws(std::uint64_t seed, const ToleranceConfig& cfg) {
  CaseRng g(seed);
  const auto s = g.shape();
  const auto x = g.mixed(s), y = g.mixed(s), w = g.mixed(s);
  const auto z = g.central(s, g.rng.integer(0, 1)).as_operator();
  const auto t = g.op(s, OperatorKind::bounded, 0, 1.0);

  const auto sum_l = (x + y) + w, sum_r = x + (y + w);
  const auto mul_l = (x * y) * w, mul_r = x * (y * w);
  const auto adj_l = adjoint(x * y), adj_r = adjoint(y) * adjoint(x);
  const auto adds_l = adjoint(x + y), adds_r = adjoint(x) + adjoint(y);
  const auto invol = adjoint(adjoint(x));
  const auto zy = z * y, yz = y * z;

  CaseOutcome out;
  const std::size_t end = s->horizon_end(cfg.horizon);
  for (std::size_t k = 0; k < end; ++k) {
    const double nx = x.fiber(k).norm(), ny = y.fiber(k).norm(), nw = w.fiber(k).norm(), nz = z.fiber(k).norm();
    out.observe(fiber::relative_distance(sum_l.fiber(k), sum_r.fiber(k)), k);
    out.observe((mul_l.fiber(k) - mul_r.fiber(k)).norm() / (1.0 + nx * ny * nw), k);
    out.observe((adj_l.fiber(k) - adj_r.fiber(k)).norm() / (1.0 + nx * ny), k);
    out.observe(fiber::relative_distance(adds_l.fiber(k), adds_r.fiber(k)), k);
    out.observe((zy.fiber(k) - yz.fiber(k)).norm() / (1.0 + nz * ny), k);
    out.check(invol.fiber(k) == x.fiber(k));
  }
  out.check(is_central(z, cfg));
  out.check(is_nonnegative(adjoint(x) * x, cfg));
  const auto tb = BoundedElement::trusted(t, 1.0);
  if (auto wit = kernel_witness(tb, cfg)) {
    out.check(wit->residual <= cfg.psd_tol);
  } else {
    for (std::size_t k = 0; k < end; ++k) out.check(fiber::spectral_norm(t.fiber(k)) < 1.0);
  }
  return out;
}

/// UB(B(T)) = T, B(UB(S)) = S, and ||B(T)(k)|| < 1.
inline CaseOutcome b_roundtrip(std::uint64_t seed, const ToleranceConfig& cfg) {
  CaseRng g(seed);
  const auto s = g.shape();
  const auto t = g.mixed(s);
  const auto bt = b_transform(t);
  const auto back = inverse_b(bt);
  const auto sc = g.op(s, OperatorKind::bounded, 0, 1.0);
  const auto dual = b_transform(inverse_b(sc)).op();
  CaseOutcome out;
  const std::size_t end = s->horizon_end(cfg.horizon);
  for (std::size_t k = 0; k < end; ++k) {
    out.observe(fiber::relative_distance(back.fiber(k), t.fiber(k)), k);
    out.observe(fiber::relative_distance(dual.fiber(k), sc.fiber(k)), k);
    out.check(fiber::spectral_norm(bt.fiber(k)) < 1.0);
  }
  return out;
}

/// Dyadic bucketing of strict contractions; a norm-one fiber must be
/// rejected with a kernel witness. Residual: norm minus class threshold.
inline CaseOutcome fin1_partition(std::uint64_t seed, const ToleranceConfig& cfg) {
  CaseRng g(seed);
  const auto s = g.shape();
  const auto t = BoundedElement::trusted(g.op(s, OperatorKind::bounded, 0, 1.0), 1.0);
  const auto th = Thresholds::dyadic();
  const auto p = strict_contraction_partition(t, th, cfg);
  CaseOutcome out;
  const std::size_t end = s->horizon_end(cfg.horizon);
  for (std::size_t k = 0; k < end; ++k) {
    const double norm = fiber::spectral_norm(t.fiber(k));
    const Label l = p.label(k);
    out.check(l >= 1);
    out.observe(std::max(0.0, norm - th.at(l)), k);
    if (l > 1) out.check(norm > th.at(l - 1));  // minimality
  }
  // Replace one fiber by a norm-one fiber.
  const std::size_t bad = g.rng.integer(0, end - 1);
  const Matrix f = t.fiber(bad);
  const Matrix unit = f / fiber::spectral_norm(f);
  const auto base = t.op();
  const auto broken = BoundedElement::trusted(
      AffiliatedOperator(s, [base, bad, unit](std::size_t k) -> Matrix { return k == bad ? unit : base.fiber(k); }), 1.0);
  try {
    (void)strict_contraction_partition(broken, th, cfg);
    out.check(false);
  } catch (const ContractionViolation& v) {
    out.check(v.block() == bad);
    out.check(v.witness().has_value() && v.witness()->residual <= cfg.psd_tol);
  }
  return out;
}

/// Reconstruction T = sum c_l S Z_l with c_n = n, the bound
/// ||S_l|| <= c_l, and label = ceil(t) on scalar fibers.
inline CaseOutcome aff_decompose(std::uint64_t seed, const ToleranceConfig& cfg) {
  CaseRng g(seed);
  const auto s = g.shape();
  const auto t = g.mixed(s);
  const auto rep = affiliated_decompose(t, Coefficients::natural(), cfg);
  const auto rebuilt = series_assemble(rep);
  const auto& cs = std::get<CoefficientSeries>(rep.data);
  CaseOutcome out;
  const std::size_t end = s->horizon_end(cfg.horizon);
  for (std::size_t k = 0; k < end; ++k) {
    out.observe(fiber::relative_distance(rebuilt.fiber(k), t.fiber(k)), k);
    const double c = cs.coeffs.at(rep.partition.label(k));
    const double excess = c * fiber::spectral_norm(cs.base.fiber(k)) - c;
    out.check(excess <= cfg.eq_tol);
  }
  // scalar algebra: labels are ceil(t)
  std::vector<BlockShape> ones(16, BlockShape{1.0, 1});
  const auto scalars = make_shape(std::move(ones));
  std::vector<Matrix> prefix;
  std::vector<double> values;
  for (std::size_t k = 0; k < 16; ++k) {
    values.push_back(g.rng.uniform(0.0, 200.0));
    prefix.push_back(Matrix::Constant(1, 1, values.back()));
  }
  const auto st = AffiliatedOperator::from_prefix(scalars, prefix);
  const auto srep = affiliated_decompose(st, Coefficients::natural(), cfg);
  for (std::size_t k = 0; k < 16; ++k) {
    const auto expect = static_cast<Label>(std::max(1.0, std::ceil(values[k])));
    out.check(srep.partition.label(k) == expect);
  }
  return out;
}

inline TraceSample trace_sample(std::uint64_t seed) {
  CaseRng g(seed);
  const auto s = g.shape();
  TraceSample t{g.mixed(s), g.mixed(s), g.op(s, OperatorKind::psd, g.rng.integer(0, 1)), g.central(s, g.rng.integer(0, 1)),
                g.rng.complex_gaussian(), g.rng.complex_gaussian()};
  return t;
}

/// Two traces of one operator through different series representations,
/// including a refinement of the decomposition partition.
inline CaseOutcome lem_valid(std::uint64_t seed, const ToleranceConfig& cfg) {
  CaseRng g(seed);
  const auto s = g.shape();
  const auto t = g.mixed(s);
  const auto rep1 = affiliated_decompose(t, Coefficients::natural(), cfg);
  const Label modulus = g.rng.integer(1, 4);
  const CentralPartition other(s, [modulus](std::size_t k) { return static_cast<Label>(k % modulus); });
  const auto refined = partition_refine({rep1.partition, other});
  const SeriesRepresentation rep2{
      refined, FamilySeries{[t, refined](Label l) -> std::optional<AffiliatedOperator> {
        return restrict_to_class(t, refined, l);
      }}};
  const auto via1 = trace_via_series(rep1), via2 = trace_via_series(rep2);
  const auto direct1 = trace_affiliated(series_assemble(rep1));
  const auto direct = trace_affiliated(t);
  CaseOutcome out;
  const std::size_t end = s->horizon_end(cfg.horizon);
  for (std::size_t k = 0; k < end; ++k) {
    const double scale = 1.0 + t.fiber(k).norm();
    const Complex d = direct.value(k);
    out.observe(std::abs(via1.value(k) - direct1.value(k)) / scale, k);
    out.observe(std::abs(via1.value(k) - via2.value(k)) / scale, k);
    out.observe(std::abs(via2.value(k) - d) / scale, k);
    out.observe(std::abs(direct1.value(k) - d) / scale, k);
  }
  return out;
}

/// Central draws are scalar-fibered and commute; generic draws are not central.
inline CaseOutcome center(std::uint64_t seed, const ToleranceConfig& cfg) {
  CaseRng g(seed);
  const auto s = g.shape();
  const auto z = g.op(s, OperatorKind::central, g.rng.integer(0, 2));
  const auto y = g.mixed(s);
  CaseOutcome out;
  out.check(is_central(z, cfg));
  out.check(is_central(trace_affiliated(y).as_operator(), cfg));
  const auto zy = z * y, yz = y * z;
  const std::size_t end = s->horizon_end(cfg.horizon);
  for (std::size_t k = 0; k < end; ++k) {
    out.observe((zy.fiber(k) - yz.fiber(k)).norm() / (1.0 + z.fiber(k).norm() * y.fiber(k).norm()), k);
  }
  const auto s2 = g.shape(2, 4);
  out.check(!is_central(g.mixed(s2), cfg));
  return out;
}

/// tr(XY - YX) = 0 while XY - YX stays away from I.
inline CaseOutcome heisenberg(std::uint64_t seed, const ToleranceConfig& cfg) {
  CaseRng g(seed);
  const auto s = g.shape();
  const auto x = g.mixed(s, 1), y = g.mixed(s, 1);
  const auto r = commutator_trace_check(x, y, cfg);
  CaseOutcome out;
  out.observe(r.commutator_trace_max, 0);
  const double max_dim = static_cast<double>(s->max_dim(cfg.horizon));
  out.check(r.distance_from_identity >= 1.0 / max_dim - 1e-9);
  return out;
}

/// Order axioms on self-adjoint draws and positivity of commuting products.
inline CaseOutcome order(std::uint64_t seed, const ToleranceConfig& cfg) {
  CaseRng g(seed);
  const auto s = g.shape();
  const auto a = g.op(s, OperatorKind::self_adjoint, g.rng.integer(0, 1));
  const auto c = g.op(s, OperatorKind::self_adjoint, g.rng.integer(0, 1));
  const auto p = g.op(s, OperatorKind::psd, g.rng.integer(0, 1));
  const auto q = g.op(s, OperatorKind::psd, 0);
  CaseOutcome out;
  out.check(leq(a, a, cfg));
  const auto ap = a + p, apq = a + p + q;
  const bool first = leq(a, ap, cfg), second = leq(ap, apq, cfg);
  out.check(first && second);
  out.check(leq(a, apq, cfg));          // transitivity
  out.check(leq(a + c, ap + c, cfg));   // translation
  out.check(!leq(ap, a, cfg));          // strict for nonzero p
  const auto a2 = adjoint(adjoint(a));
  if (leq(a, a2, cfg) && leq(a2, a, cfg)) out.check(approx_equal(a, a2, cfg));  // antisymmetry
  const auto poly = p * p + Complex(2.0) * p;
  out.check(positive_product_check(p, poly, cfg));
  out.check(positive_product_check(AffiliatedOperator::identity(s), q, cfg));
  return out;
}

/// sup tr(A_m) = tr(sup A_m), and the sup lies below sampled upper bounds.
inline CaseOutcome normality(std::uint64_t seed, const ToleranceConfig& cfg, std::size_t competitors = 20) {
  CaseRng g(seed);
  const auto s = g.shape();
  const auto chain = g.chain(s, g.rng.integer(0, 1));
  const auto result = normality_check(chain, cfg);
  const auto sup = chain_sup(chain, cfg);
  CaseOutcome out;
  out.observe(result.max_residual, result.worst_block);
  const auto& limit = *chain.rule().target;
  out.check(leq(sup, chain.declared_bound(), cfg));
  for (std::size_t m : {0, 1, 5, 20}) out.check(leq(chain.term_operator(m), sup, cfg));  // an upper bound
  for (std::size_t i = 0; i < competitors; ++i) {
    const auto r = g.op(s, OperatorKind::bounded, 0, g.rng.uniform(0.01, 2.0));
    const auto u = limit + adjoint(r) * r;
    out.check(leq(sup, u, cfg));
  }
  // the chain limit agrees with the closed-form limit of its rule
  out.observe(max_relative_residual(sup, limit, cfg.horizon).value, 0);
  return out;
}

}  // namespace suites

/// Runs the selected suites. Deterministic in (seed, sample_count, cfg).
inline SuiteReport run_suite(const SuiteConfig& config) {
  config.validate();
  SuiteReport report;
  report.cfg = config.cfg;
  report.sample_count = config.sample_count;
  report.seed = config.seed;
  const auto& cfg = config.cfg;

  for (const auto& name : config.suites) {
    auto seed_of = [&](std::size_t i) { return detail::case_seed(config, name, i); };
    if (name == "trace_axioms") {
      TraceMap tr = nullptr;
      if (config.trace_perturbation != 0.0) {
        const double delta = config.trace_perturbation;
        tr = [delta](const AffiliatedOperator& t) {
          const auto base = trace_affiliated(t);
          return CentralElement(base.shape_ptr(), [base, delta](std::size_t k) { return base.value(k) + delta; });
        };
      }
      SuiteResult r;
      r.name = name;
      r.tolerance = cfg.eq_tol;
      r.cases = config.sample_count;
      try {
        const auto rep = verify_trace_axioms(
            [&](std::uint64_t i) { return suites::trace_sample(seed_of(static_cast<std::size_t>(i))); },
            config.sample_count, cfg, 0, tr);
        r.axioms = rep.axioms;
        for (auto& a : r.axioms) a.worst_seed = seed_of(static_cast<std::size_t>(a.worst_seed));
        for (const auto& a : r.axioms) {
          r.failures += a.failures;
          if (a.max_residual > r.max_residual || (r.max_residual == 0.0 && !a.pass)) {
            r.max_residual = a.max_residual;
            r.worst_seed = a.worst_seed;
            r.worst_block = a.worst_block;
          }
        }
        r.pass = rep.pass();
      } catch (const std::exception& e) {
        r.errors = 1;
        r.first_error = e.what();
        r.pass = false;
      }
      report.suites.push_back(std::move(r));
      continue;
    }

    std::function<detail::CaseOutcome(std::uint64_t)> fn;
    double tol = cfg.eq_tol;
    if (name == "core_laws") fn = [&](std::uint64_t s) { return suites::core_laws(s, cfg); };
    if (name == "b_roundtrip") fn = [&](std::uint64_t s) { return suites::b_roundtrip(s, cfg); };
    if (name == "fin1_partition") {
      fn = [&](std::uint64_t s) { return suites::fin1_partition(s, cfg); };
      tol = 1e-10;
    }
    if (name == "aff_decompose") fn = [&](std::uint64_t s) { return suites::aff_decompose(s, cfg); };
    if (name == "lem_valid") fn = [&](std::uint64_t s) { return suites::lem_valid(s, cfg); };
    if (name == "center") fn = [&](std::uint64_t s) { return suites::center(s, cfg); };
    if (name == "heisenberg") fn = [&](std::uint64_t s) { return suites::heisenberg(s, cfg); };
    if (name == "order") fn = [&](std::uint64_t s) { return suites::order(s, cfg); };
    if (name == "normality") {
      fn = [&](std::uint64_t s) { return suites::normality(s, cfg); };
      tol = cfg.psd_tol;
    }
    const auto outcomes =
        detail::run_cases(config.sample_count, config.threads, [&](std::size_t i) { return fn(seed_of(i)); });
    report.suites.push_back(detail::reduce(name, tol, outcomes, seed_of));
  }
  return report;
}

inline nlohmann::json report_to_json(const SuiteReport& r) {
  using nlohmann::json;
  json suites = json::array();
  for (const auto& s : r.suites) {
    json j = {{"name", s.name},          {"pass", s.pass},
              {"cases", s.cases},        {"errors", s.errors},
              {"failures", s.failures},  {"max_residual", s.max_residual},
              {"tolerance", s.tolerance}, {"worst_seed", s.worst_seed},
              {"worst_block", s.worst_block}};
    if (!s.first_error.empty()) j["first_error"] = s.first_error;
    if (!s.axioms.empty()) {
      json axioms = json::array();
      for (const auto& a : s.axioms) {
        axioms.push_back({{"axiom", a.axiom},
                          {"pass", a.pass},
                          {"max_residual", a.max_residual},
                          {"worst_seed", a.worst_seed},
                          {"worst_block", a.worst_block}});
      }
      j["axioms"] = axioms;
    }
    suites.push_back(std::move(j));
  }
  return {{"pass", r.pass()},
          {"suites", suites},
          {"environment",
           {{"horizon", r.cfg.horizon},
            {"eq_tol", r.cfg.eq_tol},
            {"psd_tol", r.cfg.psd_tol},
            {"samples", r.sample_count},
            {"seed", r.seed},
            {"version", kVersion}}}};
}

}  // namespace afflab::lab
