#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "afflab/lab/expr.hpp"
#include "afflab/lab/io.hpp"
#include "afflab/lab/suites.hpp"
#include "support.hpp"

using namespace afflab;
using namespace testing_support;

namespace {
const ToleranceConfig kCfg;

lab::GeneratorProfile golden_profile() {
  lab::GeneratorProfile g;
  g.seed = 42;
  g.shape.block_count = 4;
  g.shape.dim_min = 1;
  g.shape.dim_max = 3;
  return g;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

lab::GeneratorProfile case_profile(std::uint64_t seed, lab::OperatorKind kind, std::size_t degree = 1) {
  lab::GeneratorProfile g;
  g.seed = seed;
  lab::Rng rng(seed);
  g.shape = lab::random_case_shape(rng);
  g.op = {kind, 1.0, degree};
  return g;
}
}  // namespace

// ---- generators ----

TEST(Generators, GoldenShapeSeed42) {
  const auto text = io::dump(io::shape_to_json(*lab::gen_algebra(golden_profile())));
  const std::string path = std::string(AFFLAB_GOLDEN_DIR) + "/shape_seed42.json";
  const char* regen = std::getenv("AFFLAB_REGEN_GOLDEN");
  if (regen && std::string(regen) == "1") {
    std::ofstream(path) << text;
    GTEST_SKIP() << "regenerated " << path;
  }
  const auto expected = slurp(path);
  ASSERT_FALSE(expected.empty()) << "missing golden file; run with AFFLAB_REGEN_GOLDEN=1";
  EXPECT_EQ(text, expected);
}

TEST(Generators, Deterministic) {
  auto g = golden_profile();
  g.op = {lab::OperatorKind::affiliated_polynomial, 1.0, 2};
  g.shape.tail = lab::TailParams{2, 0.5};
  const auto a = lab::gen_algebra(g), b = lab::gen_algebra(g);
  EXPECT_EQ(*a, *b);
  EXPECT_EQ(io::dump(io::operator_to_json(lab::gen_operator(a, g))), io::dump(io::operator_to_json(lab::gen_operator(b, g))));
  g.seed = 43;
  EXPECT_NE(io::dump(io::operator_to_json(lab::gen_operator(a, g))),
            io::dump(io::operator_to_json(lab::gen_operator(b, golden_profile()))));
}

TEST(Generators, ShapeProperties) {
  const auto s = lab::gen_algebra(golden_profile());
  ASSERT_EQ(s->block_count(), std::optional<std::size_t>(4));
  double total = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_GE(s->dim(k), 1u);
    EXPECT_LE(s->dim(k), 3u);
    total += s->weight(k);
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Generators, ScalarAlgebra) {
  lab::GeneratorProfile g;
  g.shape.block_count = 1;
  g.shape.dim_max = 1;
  g.op.kind = lab::OperatorKind::affiliated_polynomial;
  const auto s = lab::gen_algebra(g);
  EXPECT_EQ(s->dim(0), 1u);
  EXPECT_DOUBLE_EQ(s->weight(0), 1.0);
  EXPECT_TRUE(is_central(lab::gen_operator(s, g), kCfg));
}

TEST(Generators, TailWeightsHalve) {
  lab::GeneratorProfile g;
  g.shape.block_count = 0;
  g.shape.tail = lab::TailParams{2, 0.5};
  const auto s = lab::gen_algebra(g);
  for (std::size_t k = 0; k < 20; ++k) {
    EXPECT_EQ(s->dim(k), 2u);
    EXPECT_DOUBLE_EQ(s->weight(k), std::ldexp(1.0, -static_cast<int>(k + 1)));
  }
}

TEST(Generators, ProfileKinds) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = case_profile(seed, lab::OperatorKind::psd);
    const auto s = lab::gen_algebra(g);
    EXPECT_TRUE(is_nonnegative(lab::gen_operator(s, g), kCfg));
    g.op.kind = lab::OperatorKind::central;
    EXPECT_TRUE(is_central(lab::gen_operator(s, g), kCfg));
    g.op.kind = lab::OperatorKind::self_adjoint;
    EXPECT_TRUE(is_self_adjoint(lab::gen_operator(s, g), kCfg));
    g.op = {lab::OperatorKind::bounded, 0.5, 0};
    EXPECT_LE(operator_norm(lab::gen_operator(s, g), kCfg).value, 0.5);
    g.op.kind = lab::OperatorKind::chain;
    EXPECT_THROW(lab::gen_operator(s, g), Error);
    EXPECT_TRUE(std::holds_alternative<OperatorChain>(lab::generate(s, g)));
  }
}

TEST(Generators, PolynomialProfileIsUnbounded) {
  auto g = golden_profile();
  g.shape.tail = lab::TailParams{1, 0.5};
  g.op = {lab::OperatorKind::affiliated_polynomial, 1.0, 1};
  const auto s = lab::gen_algebra(g);
  EXPECT_EQ(boundedness_certificate(lab::gen_operator(s, g), kCfg).status,
            BoundednessCertificate::Status::unbounded_evidence);
}

TEST(Generators, InvalidProfiles) {
  auto expect_invalid = [](const lab::GeneratorProfile& g) {
    try {
      g.validate();
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidProfile);
    }
  };
  auto g = golden_profile();
  g.shape.dim_min = 4;
  expect_invalid(g);
  g = golden_profile();
  g.shape.dim_max = 17;
  expect_invalid(g);
  g = golden_profile();
  g.shape.block_count = 0;
  expect_invalid(g);
  g = golden_profile();
  g.op.degree = 5;
  expect_invalid(g);
  g = golden_profile();
  g.op.norm = -1.0;
  expect_invalid(g);
  EXPECT_THROW(io::profile_from_json(io::parse(R"({"operator": {"kind": "weird"}})")), Error);
}

// ---- io ----

TEST(Io, ShapeReserializationIsByteIdentical) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto s = lab::gen_algebra(case_profile(seed, lab::OperatorKind::bounded));
    const auto text = io::dump(io::shape_to_json(*s));
    const auto again = io::dump(io::shape_to_json(*io::shape_from_json(io::parse(text))));
    EXPECT_EQ(text, again) << seed;
    EXPECT_EQ(*io::shape_from_json(io::parse(text)), *s);
  }
}

TEST(Io, ShapeFormat) {
  const auto j = io::shape_to_json(*make_shape({{0.5, 2}, {0.25, 1}}, ShapeTail{1, 0.5}));
  EXPECT_EQ(j["blocks"][0]["w"], 0.5);
  EXPECT_EQ(j["blocks"][0]["dim"], 2);
  EXPECT_EQ(j["tail"]["dim"], 1);
  EXPECT_EQ(j["tail"]["ratio"], 0.5);
  // an omitted tail weight continues the last block geometrically
  const auto s = io::shape_from_json(io::parse(R"({"blocks":[{"w":0.5,"dim":2}],"tail":{"dim":1,"ratio":0.5}})"));
  EXPECT_DOUBLE_EQ(s->weight(1), 0.25);
  EXPECT_DOUBLE_EQ(s->weight(2), 0.125);
}

TEST(Io, OperatorTailPreservedExactly) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = case_profile(seed, lab::OperatorKind::affiliated_polynomial, seed % 4);
    g.shape.tail = lab::TailParams{2, 0.5};
    const auto s = lab::gen_algebra(g);
    const auto t = lab::gen_operator(s, g);
    const auto text = io::dump(io::document_to_json({s, t, std::nullopt, std::nullopt}));
    const auto back = io::document_from_json(io::parse(text));
    ASSERT_TRUE(back.op);
    ASSERT_TRUE(back.op->tail());
    ASSERT_EQ(back.op->tail()->coeffs.size(), t.tail()->coeffs.size());
    for (std::size_t p = 0; p < t.tail()->coeffs.size(); ++p) EXPECT_EQ(back.op->tail()->coeffs[p], t.tail()->coeffs[p]);
    for (std::size_t k : {0, 3, 63, 999}) EXPECT_EQ(back.op->fiber(k), t.fiber(k));
    EXPECT_EQ(io::dump(io::document_to_json(back)), text);
  }
}

TEST(Io, OperatorFormat) {
  const auto s = uniform_shape(1, 2);
  const auto j = io::operator_to_json(AffiliatedOperator::from_prefix(s, {mat2(1, Complex(0, 2), 3, 4)}));
  EXPECT_EQ(j["prefix"][0][1][0], 0.0);  // row-major, [re, im]
  EXPECT_EQ(j["prefix"][0][1][1], 2.0);
  EXPECT_EQ(j["prefix"][0][2][0], 3.0);
  EXPECT_FALSE(j.contains("tail"));
}

TEST(Io, DecimalStringCoefficientsAreAccepted) {
  const auto doc = io::document_from_json(io::parse(
      R"({"shape":{"blocks":[],"tail":{"dim":1,"ratio":0.5}},
          "operator":{"prefix":[],"tail":{"degree":1,"coeffs":[[["0.1","0"]],[["1","0"]]]}}})"));
  EXPECT_EQ(doc.op->fiber(0)(0, 0), Complex(0.1));
  EXPECT_EQ(doc.op->fiber(10)(0, 0), Complex(10.1));
}

TEST(Io, CentralAndChainRoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = case_profile(seed, lab::OperatorKind::central);
    const auto s = lab::gen_algebra(g);
    const auto z = lab::gen_central(s, g);
    g.op.kind = lab::OperatorKind::chain;
    const auto c = lab::gen_chain(s, g);
    const io::Document doc{s, std::nullopt, z, c};
    const auto text = io::dump(io::document_to_json(doc));
    const auto back = io::document_from_json(io::parse(text));
    EXPECT_EQ(io::dump(io::document_to_json(back)), text);
    for (std::size_t k = 0; k < s->horizon_end(64); ++k) {
      EXPECT_EQ(back.central->value(k), z.value(k));
      // stored tails are the combined polynomial, generated fibers the lazy composition
      const Matrix a = back.chain->term(7, k), b = c.term(7, k);
      EXPECT_LE((a - b).norm(), 1e-12 * (1.0 + b.norm())) << k;
    }
    EXPECT_EQ(back.chain->rule().kind, c.rule().kind);
  }
}

TEST(Io, PartitionRoundTrip) {
  const auto s = uniform_shape(3, 1);
  std::vector<Matrix> f{scalar(0.4), scalar(0.6), scalar(0.9)};
  const auto t = BoundedElement::trusted(AffiliatedOperator::from_prefix(s, f), 1.0);
  const auto p = strict_contraction_partition(t, Thresholds::dyadic(), kCfg);
  const auto j = io::partition_to_json(p);
  EXPECT_EQ(j["labels_prefix"], io::Json::parse("[1,2,4]"));
  EXPECT_EQ(j["tail_rule"]["kind"], "by_norm");
  EXPECT_EQ(j["tail_rule"]["thresholds"], "dyadic");
  const auto back = io::partition_from_json(s, j);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(back.label(k), p.label(k));

  // by_norm past the prefix, re-derived from the source operator
  const auto ts = tail_shape(1);
  const auto src = BoundedElement::trusted(
      AffiliatedOperator(ts, [](std::size_t k) { return scalar(1.0 - std::ldexp(1.0, -int(k % 20 + 1))); }), 1.0);
  const auto q = strict_contraction_partition(src, Thresholds::dyadic(), kCfg);
  const auto qb = io::partition_from_json(ts, io::partition_to_json(q), src);
  for (std::size_t k : {0, 5, 63, 64, 100}) EXPECT_EQ(qb.label(k), q.label(k));
  EXPECT_THROW(io::partition_from_json(ts, io::partition_to_json(q)).label(64), Error);

  const auto c = CentralPartition::from_labels(ts, {3, 4}, 9);
  const auto cb = io::partition_from_json(ts, io::partition_to_json(c, 2));
  EXPECT_EQ(cb.label(1), 4u);
  EXPECT_EQ(cb.label(500), 9u);
}

TEST(Io, MalformedInputCarriesLocation) {
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return std::make_pair(e.kind(), std::string(e.what()));
    }
    return std::make_pair(ErrorKind::InvalidArgument, std::string("no error"));
  };
  auto [k1, m1] = kind_of([] { io::parse(R"({"shape": {"blocks": [{"w": 1, )"); });
  EXPECT_EQ(k1, ErrorKind::MalformedInput);
  EXPECT_NE(m1.find("byte"), std::string::npos);
  auto [k2, m2] = kind_of([] { io::document_from_json(io::parse(R"({"shape": {"blocks": [{"w": 1}]}})")); });
  EXPECT_EQ(k2, ErrorKind::MalformedInput);
  EXPECT_NE(m2.find("/shape/blocks/0"), std::string::npos) << m2;
  auto [k3, m3] = kind_of([] {
    io::document_from_json(io::parse(R"({"shape":{"blocks":[{"w":1,"dim":2}]},"operator":{"prefix":[[[1,0]]]}})"));
  });
  EXPECT_EQ(k3, ErrorKind::MalformedInput);
  EXPECT_NE(m3.find("/operator/prefix/0"), std::string::npos) << m3;
  auto [k4, m4] = kind_of([] { io::document_from_json(io::parse(R"({"shape":{"blocks":"x"}})")); });
  EXPECT_EQ(k4, ErrorKind::MalformedInput);
}

// ---- expressions ----

namespace {
struct ExprFixture {
  ShapePtr s;
  AffiliatedOperator x, y;
  lab::Bindings b;

  explicit ExprFixture(std::uint64_t seed) : s(make_shape({{1.0, 2}, {1.0, 3}}, ShapeTail{2, 0.5})),
                                              x(AffiliatedOperator::zero(s)),
                                              y(AffiliatedOperator::zero(s)) {
    lab::GeneratorProfile g;
    g.seed = seed;
    g.op = {lab::OperatorKind::affiliated_polynomial, 1.0, 1};
    x = lab::gen_operator(s, g);
    g.seed = seed + 1;
    y = lab::gen_operator(s, g);
    b = {{"X", x}, {"Y", y}};
  }

  AffiliatedOperator op(const std::string& text) const {
    return lab::detail::as_operator(lab::eval_expr(text, b), s);
  }
};
}  // namespace

TEST(Expr, TraceOfCommutatorIsZero) {
  const ExprFixture f(1);
  const auto v = lab::eval_expr("tr(X*Y - Y*X)", f.b);
  ASSERT_TRUE(std::holds_alternative<CentralElement>(v));
  const auto& z = std::get<CentralElement>(v);
  for (std::size_t k = 0; k < 64; ++k) EXPECT_LE(std::abs(z.value(k)), 1e-9);
}

TEST(Expr, InvolutionLaw) {
  const ExprFixture f(2);
  EXPECT_TRUE(approx_equal(f.op("adj(X*Y)"), f.op("adj(Y)*adj(X)"), kCfg));
  EXPECT_FALSE(approx_equal(f.op("X*Y"), f.op("Y*X"), kCfg));  // no implicit commutativity
}

TEST(Expr, BRoundTrip) {
  const ExprFixture f(3);
  EXPECT_TRUE(approx_equal(f.op("UB(B(X))"), f.x, kCfg));
}

TEST(Expr, PrecedenceAndLiterals) {
  const ExprFixture f(4);
  EXPECT_TRUE(approx_equal(f.op("X + Y*X"), f.x + f.y * f.x, kCfg));
  EXPECT_TRUE(approx_equal(f.op("X - Y - X"), (f.x - f.y) - f.x, kCfg));
  EXPECT_TRUE(approx_equal(f.op("(2+3i)*X"), Complex(2, 3) * f.x, kCfg));
  EXPECT_TRUE(approx_equal(f.op("X*2i"), Complex(0, 2) * f.x, kCfg));
  EXPECT_TRUE(approx_equal(f.op("-X + 1"), AffiliatedOperator::identity(f.s) - f.x, kCfg));
  EXPECT_TRUE(approx_equal(f.op("1.5e1*X"), Complex(15.0) * f.x, kCfg));
  const auto c = lab::eval_expr("(1+2i)*(1-2i)", {});
  EXPECT_EQ(std::get<Complex>(c), Complex(5.0));
  EXPECT_EQ(std::get<Complex>(lab::eval_expr("B(2)", {})), Complex(2.0 / 3.0));
}

TEST(Expr, CentralPromotion) {
  const ExprFixture f(5);
  const auto v = lab::eval_expr("tr(X) * tr(Y) + 1", f.b);
  ASSERT_TRUE(std::holds_alternative<CentralElement>(v));
  const auto tx = trace_affiliated(f.x), ty = trace_affiliated(f.y);
  const auto& z = std::get<CentralElement>(v);
  for (std::size_t k : {0, 2, 40}) EXPECT_NEAR(std::abs(z.value(k) - (tx.value(k) * ty.value(k) + 1.0)), 0.0, 1e-9);
  EXPECT_TRUE(approx_equal(f.op("tr(X)*Y"), trace_affiliated(f.x).as_operator() * f.y, kCfg));
}

TEST(Expr, ParseErrorsReportPosition) {
  auto pos = [](const std::string& text) -> std::optional<std::size_t> {
    try {
      lab::parse_expr(text);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError);
      return e.step();
    }
    return std::nullopt;
  };
  EXPECT_EQ(pos("X*(Y"), std::optional<std::size_t>(4));
  EXPECT_EQ(pos("X + + "), std::optional<std::size_t>(4));  // no unary plus
  EXPECT_EQ(pos("X $ Y"), std::optional<std::size_t>(2));
  EXPECT_EQ(pos("tr X"), std::optional<std::size_t>(3));
  EXPECT_EQ(pos(""), std::optional<std::size_t>(0));
  EXPECT_FALSE(pos("adj(X) * tr(Y*Y) - UB(B(X))"));
}

TEST(Expr, UnboundAndMismatchedOperands) {
  const ExprFixture f(6);
  try {
    lab::eval_expr("X + Z", f.b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnboundIdentifier);
    EXPECT_EQ(e.step(), std::optional<std::size_t>(4));
  }
  lab::Bindings b = f.b;
  b.insert_or_assign("W", AffiliatedOperator::identity(uniform_shape(1, 1)));
  try {
    lab::eval_expr("X*W", b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ShapeMismatch);
  }
}

namespace {
/// Random expression over X, Y, Z and small literals, with the value computed
/// directly through algebra_combine alongside.
std::pair<std::string, AffiliatedOperator> random_expr(lab::Rng& rng, int depth,
                                                       const std::vector<std::pair<std::string, AffiliatedOperator>>& vars) {
  if (depth == 0 || rng.coin(0.2)) {
    const auto& v = vars[rng.integer(0, vars.size() - 1)];
    return v;
  }
  const auto choice = rng.integer(0, 4);
  auto [ls, lv] = random_expr(rng, depth - 1, vars);
  if (choice == 3) return {"adj(" + ls + ")", algebra_combine(CombineKind::adjoint, lv)};
  if (choice == 4) {
    const double a = static_cast<double>(rng.integer(1, 5));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", a);
    return {"(" + std::string(buf) + "i*" + ls + ")", algebra_combine(CombineKind::scale, lv, std::nullopt, Complex(0, a))};
  }
  auto [rs, rv] = random_expr(rng, depth - 1, vars);
  const CombineKind kind = choice == 0 ? CombineKind::add : choice == 1 ? CombineKind::sub : CombineKind::mul;
  const char* sym = choice == 0 ? " + " : choice == 1 ? " - " : " * ";
  return {"(" + ls + sym + rs + ")", algebra_combine(kind, lv, rv)};
}
}  // namespace

TEST(Expr, AgreesWithDirectComposition) {
  const auto s = make_shape({{1.0, 2}, {1.0, 1}}, ShapeTail{3, 0.5});
  std::vector<std::pair<std::string, AffiliatedOperator>> vars;
  lab::Bindings b;
  for (const char* name : {"X", "Y", "Z"}) {
    lab::GeneratorProfile g;
    g.seed = lab::mix_seed(static_cast<std::uint64_t>(name[0]));
    g.op = {lab::OperatorKind::bounded, 1.0, 0};
    const auto op = lab::gen_operator(s, g);
    vars.emplace_back(name, op);
    b.insert_or_assign(name, op);
  }
  lab::Rng rng(2024);
  for (int i = 0; i < 100; ++i) {
    const auto [text, direct] = random_expr(rng, 5, vars);
    const auto via = lab::detail::as_operator(lab::eval_expr(text, b), s);
    EXPECT_LE(max_relative_residual(via, direct, 64).value, 1e-12) << text;
    const auto reparsed = lab::detail::as_operator(lab::eval_expr(lab::to_string(lab::parse_expr(text)), b), s);
    EXPECT_EQ(max_relative_residual(reparsed, via, 64).value, 0.0) << text;
  }
}

// ---- suites ----

TEST(Suites, DefaultConfigPasses) {
  lab::SuiteConfig c;
  c.sample_count = 40;
  const auto r = lab::run_suite(c);
  ASSERT_EQ(r.suites.size(), 10u);
  for (const auto& s : r.suites) {
    EXPECT_TRUE(s.pass) << s.name << " " << s.first_error;
    EXPECT_EQ(s.cases, 40u);
  }
}

TEST(Suites, EmptyOrUnknownSuiteList) {
  lab::SuiteConfig c;
  c.suites.clear();
  try {
    lab::run_suite(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidProfile);
  }
  c.suites = {"core_laws", "nonsense"};
  EXPECT_THROW(lab::run_suite(c), Error);
  c.suites = {"core_laws"};
  c.sample_count = 0;
  EXPECT_THROW(lab::run_suite(c), Error);
}

TEST(Suites, InjectedTraceFaultFailsWithWorstBlock) {
  lab::SuiteConfig c;
  c.suites = {"trace_axioms"};
  c.sample_count = 30;
  c.trace_perturbation = 1e-3;
  const auto r = lab::run_suite(c);
  ASSERT_EQ(r.suites.size(), 1u);
  const auto& s = r.suites[0];
  EXPECT_FALSE(s.pass);
  EXPECT_FALSE(r.pass());
  EXPECT_GT(s.max_residual, 1e-4);
  EXPECT_NE(s.worst_seed, 0u);
  const auto j = lab::report_to_json(r);
  EXPECT_TRUE(j["suites"][0].contains("worst_block"));
  bool some_axiom_failed = false;
  for (const auto& a : j["suites"][0]["axioms"]) some_axiom_failed |= !a["pass"].get<bool>();
  EXPECT_TRUE(some_axiom_failed);
}

TEST(Suites, ReportsAreByteIdenticalAcrossThreadCounts) {
  lab::SuiteConfig c;
  c.sample_count = 15;
  c.threads = 1;
  const auto one = io::dump(lab::report_to_json(lab::run_suite(c)));
  c.threads = 4;
  const auto four = io::dump(lab::report_to_json(lab::run_suite(c)));
  EXPECT_EQ(one, four);
  c.seed = 8;
  EXPECT_NE(io::dump(lab::report_to_json(lab::run_suite(c))), one);
}

TEST(Suites, ReportEnvironment) {
  lab::SuiteConfig c;
  c.suites = {"center"};
  c.sample_count = 3;
  const auto j = lab::report_to_json(lab::run_suite(c));
  EXPECT_EQ(j["environment"]["horizon"], 64);
  EXPECT_EQ(j["environment"]["eq_tol"], 1e-9);
  EXPECT_EQ(j["environment"]["psd_tol"], 1e-8);
  EXPECT_EQ(j["environment"]["version"], lab::kVersion);
  EXPECT_EQ(j["suites"][0]["name"], "center");
}

TEST(Suites, CaseErrorsFailTheSuite) {
  const auto outcomes = lab::detail::run_cases(3, 1, [](std::size_t i) -> lab::detail::CaseOutcome {
    if (i == 1) throw Error(ErrorKind::NumericalFailure, "boom", 5);
    return {};
  });
  const auto r = lab::detail::reduce("x", 1e-9, outcomes, [](std::size_t i) { return 100 + i; });
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.errors, 1u);
  EXPECT_EQ(r.worst_seed, 101u);
  EXPECT_NE(r.first_error.find("boom"), std::string::npos);
}
