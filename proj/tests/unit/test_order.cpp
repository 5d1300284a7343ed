#include <gtest/gtest.h>

#include "afflab/lab/generators.hpp"
#include "support.hpp"

using namespace afflab;
using namespace testing_support;

namespace {
const ToleranceConfig kCfg;

lab::GeneratorProfile seeded(std::uint64_t seed, lab::OperatorKind kind, std::size_t degree = 1) {
  lab::GeneratorProfile g;
  g.seed = seed;
  lab::Rng rng(seed);
  g.shape = lab::random_case_shape(rng);
  g.op = {kind, 1.0, degree};
  return g;
}
}  // namespace

TEST(Leq, Examples) {
  const auto s = tail_shape(2);
  const auto i = AffiliatedOperator::identity(s), z = AffiliatedOperator::zero(s);
  EXPECT_TRUE(leq(z, i, kCfg));
  EXPECT_FALSE(leq(i, z, kCfg));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = seeded(seed, lab::OperatorKind::self_adjoint);
    const auto sh = lab::gen_algebra(g);
    const auto a = lab::gen_operator(sh, g);
    g.op.kind = lab::OperatorKind::affiliated_polynomial;
    const auto x = lab::gen_operator(sh, g);
    EXPECT_TRUE(leq(a, a + adjoint(x) * x, kCfg)) << seed;
    EXPECT_TRUE(leq(a, a, kCfg)) << seed;
  }
}

TEST(Leq, RequiresSelfAdjointOperands) {
  const auto s = uniform_shape(2, 2);
  const auto a = AffiliatedOperator::from_prefix(s, {diag({1, 1}), mat2(0, 1, 0, 0)});
  try {
    leq(a, AffiliatedOperator::identity(s), kCfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSelfAdjoint);
    EXPECT_EQ(e.block(), std::optional<std::size_t>(1));
  }
}

TEST(Leq, IsAPartialOrder) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = seeded(seed, lab::OperatorKind::self_adjoint);
    const auto s = lab::gen_algebra(g);
    const auto a = lab::gen_operator(s, g);
    g.op.kind = lab::OperatorKind::psd;
    g.seed += 1;
    const auto p = lab::gen_operator(s, g);
    g.seed += 1;
    const auto q = lab::gen_operator(s, g);
    g.op.kind = lab::OperatorKind::self_adjoint;
    const auto c = lab::gen_operator(s, g);
    EXPECT_TRUE(leq(a, a + p + q, kCfg));                  // transitivity through a + p
    EXPECT_TRUE(leq(a + c, a + p + c, kCfg));              // translation invariance
    EXPECT_FALSE(leq(a + p, a, kCfg));                     // antisymmetry: p != 0
    EXPECT_TRUE(leq(Complex(2.0) * a, Complex(2.0) * a + Complex(3.0) * p, kCfg));
  }
}

TEST(PositiveProduct, Examples) {
  const auto s = uniform_shape(1, 2);
  const auto a = AffiliatedOperator::from_prefix(s, {diag({1, 2})});
  EXPECT_TRUE(positive_product_check(a, a, kCfg));
  EXPECT_EQ((a * a).fiber(0), diag({1, 4}));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = seeded(seed, lab::OperatorKind::psd);
    const auto sh = lab::gen_algebra(g);
    const auto p = lab::gen_operator(sh, g);
    EXPECT_TRUE(positive_product_check(AffiliatedOperator::identity(sh), p, kCfg));
    // simultaneous polynomials in one PSD operator commute
    const auto f = p * p + Complex(2.0) * p + AffiliatedOperator::identity(sh);
    const auto h = Complex(3.0) * p * p * p + p;
    EXPECT_TRUE(positive_product_check(f, h, kCfg)) << seed;
  }
}

TEST(PositiveProduct, Errors) {
  const auto s = uniform_shape(1, 2);
  const auto a = AffiliatedOperator::from_prefix(s, {diag({1, 2})});
  const auto b = AffiliatedOperator::from_prefix(s, {mat2(1, 1, 1, 1)});
  const auto neg = AffiliatedOperator::from_prefix(s, {diag({1, -2})});
  try {
    positive_product_check(a, b, kCfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCommuting);
    EXPECT_EQ(e.block(), std::optional<std::size_t>(0));
  }
  try {
    positive_product_check(neg, a, kCfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPositive);
  }
}

// ---- chains ----

TEST(ChainSup, GeometricToProjection) {
  const auto s = tail_shape(2);
  const auto p = constant_operator(s, diag({1, 0}));
  const auto chain = OperatorChain::geometric_approach({}, p, p);
  EXPECT_LT((chain.term(1, 0) - diag({0.5, 0})).norm(), 1e-16);
  const auto sup = chain_sup(chain, kCfg);
  EXPECT_TRUE(approx_equal(sup, p, kCfg));
  EXPECT_LE(max_relative_residual(sup, p, 64).value, 1e-9);
}

TEST(ChainSup, GeometricWithPrefix) {
  const auto s = uniform_shape(2, 1);
  const auto l = AffiliatedOperator::from_prefix(s, {scalar(4.0), scalar(1.0)});
  const auto first = AffiliatedOperator::from_prefix(s, {scalar(0.0), scalar(-3.0)});
  const auto chain = OperatorChain::geometric_approach({first}, l, l);
  EXPECT_EQ(chain.term(0, 1)(0, 0), Complex(-3.0));
  EXPECT_EQ(chain.term(1, 1)(0, 0), Complex(-1.0));  // L - (L - P) / 2
  EXPECT_LE(max_relative_residual(chain_sup(chain, kCfg), l, 64).value, 1e-8);
}

TEST(ChainSup, ConstantChain) {
  const auto s = uniform_shape(3, 2);
  const auto a = AffiliatedOperator::from_prefix(s, {diag({1, -1}), mat2(0, 1, 1, 0), diag({5, 5})});
  const OperatorChain chain(s, [a](std::size_t, std::size_t k) { return a.fiber(k); }, a);
  EXPECT_EQ(max_relative_residual(chain_sup(chain, kCfg), a, 64).value, 0.0);
  EXPECT_EQ(normality_check(chain, kCfg).max_residual, 0.0);
}

TEST(ChainSup, UnboundedSupByTruncation) {
  const auto s = tail_shape(1);
  const auto target = linear_operator(s, scalar(1.0), scalar(0.0));  // k at block k
  const auto chain = OperatorChain::truncation({}, target, target);
  EXPECT_EQ(chain.term(3, 10)(0, 0), Complex(3.0));
  const auto sup = chain_sup(chain, kCfg);
  for (std::size_t k : {0, 1, 30, 63}) EXPECT_NEAR(std::abs(sup.fiber(k)(0, 0) - double(k)), 0.0, 1e-12);
  EXPECT_EQ(boundedness_certificate(target, kCfg).status, BoundednessCertificate::Status::unbounded_evidence);
  const auto n = normality_check(chain, kCfg);
  for (std::size_t k : {0, 5, 63}) {
    EXPECT_NEAR(std::abs(n.lhs.value(k) - double(k)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(n.rhs.value(k) - double(k)), 0.0, 1e-12);
  }
}

TEST(ChainSup, MinIndexChain) {
  const auto s = tail_shape(2);
  const auto bound = linear_operator(s, fiber::identity(2), fiber::zero(2));
  const OperatorChain chain(
      s, [](std::size_t m, std::size_t k) -> Matrix { return double(std::min(m, k)) * fiber::identity(2); }, bound);
  EXPECT_TRUE(approx_equal(chain_sup(chain, kCfg), bound, kCfg));
}

TEST(ChainSup, ViolationsCarryBlockAndStep) {
  const auto s = uniform_shape(2, 1);
  const auto one = AffiliatedOperator::identity(s);
  const OperatorChain decreasing(
      s, [](std::size_t m, std::size_t k) -> Matrix { return scalar(k == 1 ? -double(m) : 0.0); }, one);
  try {
    chain_sup(decreasing, kCfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MonotonicityViolation);
    EXPECT_EQ(e.block(), std::optional<std::size_t>(1));
    EXPECT_EQ(e.step(), std::optional<std::size_t>(1));
  }
  const OperatorChain escaping(s, [](std::size_t m, std::size_t) -> Matrix { return scalar(double(m)); }, one);
  try {
    chain_sup(escaping, kCfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BoundViolation);
    EXPECT_EQ(e.step(), std::optional<std::size_t>(2));
  }
  const auto big = AffiliatedOperator::scalar_identity(s, 1e9);
  const OperatorChain slow(s, [](std::size_t m, std::size_t) -> Matrix { return scalar(std::log1p(double(m))); }, big);
  try {
    chain_sup(slow, kCfg, {100, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoConvergenceWithinBudget);
  }
  const auto s2 = uniform_shape(1, 2);
  const OperatorChain skew(s2, [](std::size_t, std::size_t) -> Matrix { return mat2(0, 1, 0, 0); },
                           AffiliatedOperator::identity(s2));
  try {
    chain_sup(skew, kCfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSelfAdjoint);
  }
}

TEST(Normality, ProjectionChain) {
  const auto s = uniform_shape(3, 2);
  const auto p = AffiliatedOperator::from_prefix(s, {diag({1, 0}), diag({1, 0}), diag({1, 0})});
  const auto chain = OperatorChain::geometric_approach({}, p, p);
  const auto n = normality_check(chain, kCfg);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_NEAR(n.lhs.value(k).real(), 0.5, 1e-9);
    EXPECT_NEAR(n.rhs.value(k).real(), 0.5, 1e-9);
  }
  EXPECT_LE(n.max_residual, 1e-8);
}

TEST(Normality, SeededChainsAndCompetitors) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto g = seeded(seed, lab::OperatorKind::chain, seed % 2);
    const auto s = lab::gen_algebra(g);
    const auto chain = lab::gen_chain(s, g);
    const auto n = normality_check(chain, kCfg);
    EXPECT_LE(n.max_residual, 1e-8) << seed;
    const auto sup = chain_sup(chain, kCfg);
    EXPECT_TRUE(leq(sup, chain.declared_bound(), kCfg));
    for (std::size_t m : {0, 3, 20}) EXPECT_TRUE(leq(chain.term_operator(m), sup, kCfg)) << seed;
    g.op.kind = lab::OperatorKind::psd;
    for (std::uint64_t i = 0; i < 5; ++i) {
      g.seed = seed * 100 + i;
      EXPECT_TRUE(leq(sup, *chain.rule().target + lab::gen_operator(s, g), kCfg));
    }
  }
}
