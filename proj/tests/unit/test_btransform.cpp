#include <gtest/gtest.h>

#include "afflab/lab/generators.hpp"
#include "support.hpp"

using namespace afflab;
using namespace testing_support;

namespace {
const ToleranceConfig kCfg;

AffiliatedOperator scalar_blocks(std::vector<double> values) {
  const auto s = uniform_shape(values.size(), 1);
  std::vector<Matrix> prefix;
  for (double v : values) prefix.push_back(scalar(v));
  return AffiliatedOperator::from_prefix(s, prefix);
}
}  // namespace

TEST(BTransform, ScalarExamples) {
  const auto b = b_transform(scalar_blocks({0.0, 2.0, -2.0}));
  EXPECT_EQ(b.fiber(0)(0, 0), Complex(0.0));
  EXPECT_NEAR(std::abs(b.fiber(1)(0, 0) - 2.0 / 3.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b.fiber(2)(0, 0) + 2.0 / 3.0), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(b.norm_bound(), 1.0);
  EXPECT_DOUBLE_EQ(b_scalar(2.0), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(ub_scalar(0.5), 1.0);
}

TEST(BTransform, DiagonalExample) {
  EXPECT_LT((fiber::b_transform(diag({1, 3})) - diag({0.5, 0.75})).norm(), 1e-15);
  EXPECT_LT((fiber::inverse_b(diag({0.5, 0.75}), 0) - diag({1, 3})).norm(), 1e-14);
}

TEST(BTransform, ComplexScalarUsesModulus) {
  const Complex t(3.0, 4.0);  // |t| = 5
  const Matrix b = fiber::b_transform(scalar(t));
  EXPECT_NEAR(std::abs(b(0, 0) - t / 6.0), 0.0, 1e-15);
}

TEST(BTransform, NonNormalFiberMatchesDefinition) {
  // T (I + |T|)^{-1} with |T| = sqrt(T* T); for the nilpotent E12, |T| = E22.
  const Matrix t = mat2(0, 2, 0, 0);
  const Matrix expected = t * (fiber::identity(2) + diag({0, 2})).inverse();
  EXPECT_LT((fiber::b_transform(t) - expected).norm(), 1e-15);
  EXPECT_LT((fiber::abs(t) - diag({0, 2})).norm(), 1e-15);
}

TEST(InverseB, Examples) {
  const auto s = uniform_shape(2, 1);
  const auto x = inverse_b(AffiliatedOperator::from_prefix(s, {scalar(0.5), scalar(0.0)}));
  EXPECT_NEAR(std::abs(x.fiber(0)(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_EQ(x.fiber(1)(0, 0), Complex(0.0));
}

TEST(InverseB, RejectsNonContractionWithBlock) {
  const auto s = uniform_shape(3, 1);
  const auto x = inverse_b(AffiliatedOperator::from_prefix(s, {scalar(0.5), scalar(0.2), scalar(1.0)}));
  try {
    (void)x.fiber(2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotStrictContraction);
    EXPECT_EQ(e.block(), std::optional<std::size_t>(2));
  }
  // 1 - ||S|| below the conditioning guard is refused too
  EXPECT_THROW(fiber::inverse_b(scalar(1.0 - 1e-14), 0), Error);
  EXPECT_NO_THROW(fiber::inverse_b(scalar(1.0 - 1e-10), 0));
}

TEST(BTransform, ConstantTailMapsToConstantTail) {
  const auto t = constant_operator(tail_shape(2), diag({1, 3}));
  const auto b = b_transform(t);
  ASSERT_TRUE(b.op().tail());
  EXPECT_TRUE(b.op().tail()->constant());
  EXPECT_LT((b.fiber(500) - diag({0.5, 0.75})).norm(), 1e-15);
}

TEST(BTransform, RoundTripOnSeededOperators) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    lab::Rng rng(seed);
    lab::GeneratorProfile p;
    p.seed = seed;
    p.shape = lab::random_case_shape(rng);
    p.op = {lab::OperatorKind::affiliated_polynomial, 1.0, seed % 3};
    const auto s = lab::gen_algebra(p);
    const auto t = lab::gen_operator(s, p);
    const auto b = b_transform(t);
    EXPECT_LE(max_relative_residual(inverse_b(b), t, 64).value, 1e-10) << seed;
    for (std::size_t k = 0; k < s->horizon_end(64); ++k) EXPECT_LT(fiber::spectral_norm(b.fiber(k)), 1.0);
    p.op = {lab::OperatorKind::bounded, 0.999, 0};
    const auto c = lab::gen_operator(s, p);
    EXPECT_LE(max_relative_residual(b_transform(inverse_b(c)).op(), c, 64).value, 1e-10) << seed;
  }
}

TEST(Boundedness, ConstantFiveIsBounded) {
  const auto c = boundedness_certificate(AffiliatedOperator::scalar_identity(tail_shape(2), 5.0), kCfg);
  EXPECT_EQ(c.status, BoundednessCertificate::Status::bounded);
  EXPECT_NEAR(c.bound, 5.0, 1e-12);
  EXPECT_NEAR(c.statistic, 5.0 / 6.0, 1e-15);
}

TEST(Boundedness, LinearGrowthIsUnbounded) {
  const auto t = linear_operator(tail_shape(1), scalar(1.0), scalar(0.0));
  const auto c = boundedness_certificate(t, kCfg);
  EXPECT_EQ(c.status, BoundednessCertificate::Status::unbounded_evidence);
  EXPECT_EQ(c.block, 63u);
  EXPECT_NEAR(c.statistic, 63.0 / 64.0, 1e-15);
}

TEST(Boundedness, ZeroIsBoundedByZero) {
  const auto c = boundedness_certificate(AffiliatedOperator::zero(tail_shape(3)), kCfg);
  EXPECT_EQ(c.status, BoundednessCertificate::Status::bounded);
  EXPECT_EQ(c.bound, 0.0);
}

TEST(Boundedness, FiniteShapeIsBounded) {
  const auto c = boundedness_certificate(scalar_blocks({1.0, -7.0, 2.0}), kCfg);
  EXPECT_EQ(c.status, BoundednessCertificate::Status::bounded);
  EXPECT_NEAR(c.bound, 7.0, 1e-12);
  EXPECT_EQ(c.block, 1u);
}

TEST(Boundedness, TaillessInfiniteDataIsInconclusive) {
  const auto s = tail_shape(1);
  const AffiliatedOperator t(s, [](std::size_t k) { return scalar(std::sqrt(static_cast<double>(k))); });
  EXPECT_EQ(boundedness_certificate(t, kCfg).status, BoundednessCertificate::Status::inconclusive);
}

TEST(Boundedness, PolynomialProfileGivesUnboundedEvidence) {
  lab::GeneratorProfile p;
  p.shape.tail = lab::TailParams{2, 0.5};
  p.op = {lab::OperatorKind::affiliated_polynomial, 1.0, 1};
  const auto s = lab::gen_algebra(p);
  EXPECT_EQ(boundedness_certificate(lab::gen_operator(s, p), kCfg).status,
            BoundednessCertificate::Status::unbounded_evidence);
}
