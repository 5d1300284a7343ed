// Build an unbounded operator on an algebra with a geometric tail, split it
// into bounded pieces, and check that its trace survives the round trip.

#include <cstdio>

#include "afflab/afflab.hpp"

using namespace afflab;

int main() {
  // Two explicit blocks, then infinitely many 2x2 blocks with weights
  // shrinking by half.
  auto shape = make_shape({{0.25, 1}, {0.25, 2}}, ShapeTail{2, 0.5});

  // T(k) = diag(k, 2k + 1) on the tail: a degree-1 polynomial in k.
  MatrixTail tail{2, {Matrix::Zero(2, 2), Matrix::Zero(2, 2)}};
  tail.coeffs[0](1, 1) = 1.0;
  tail.coeffs[1](0, 0) = 1.0;
  tail.coeffs[1](1, 1) = 2.0;
  Matrix b1(2, 2);
  b1 << 1.0, Complex(0, 1), Complex(0, -1), 3.0;
  const auto t = AffiliatedOperator::from_prefix(shape, {Matrix::Constant(1, 1, 0.5), b1}, tail);

  ToleranceConfig cfg;
  const auto cert = boundedness_certificate(t, cfg);
  std::printf("bounded? %s (sup of ||B(T)(k)|| over %zu blocks: %.6f)\n",
              cert.status == BoundednessCertificate::Status::bounded ? "yes" : "no", cfg.horizon, cert.statistic);

  // T = sum_n n S Z_n with ||S|| <= 1 and central projections Z_n.
  const auto rep = affiliated_decompose(t, Coefficients::natural(), cfg);
  std::printf("labels:");
  for (std::size_t k = 0; k < 8; ++k) std::printf(" %llu", static_cast<unsigned long long>(rep.partition.label(k)));
  std::printf(" ...\n");

  const auto rebuilt = series_assemble(rep);
  std::printf("reassembly residual: %.2e\n", max_relative_residual(rebuilt, t, cfg.horizon).value);

  // The center-valued trace, computed directly and through the series.
  const auto direct = trace_affiliated(t);
  const auto via = trace_via_series(rep);
  for (std::size_t k : {0, 1, 2, 10}) {
    std::printf("tr(T) at block %2zu: %8.4f   via series: %8.4f\n", k, direct.value(k).real(), via.value(k).real());
  }

  // Positivity: T* T >= 0, while I <= T fails on the first block.
  std::printf("T*T >= 0: %s\n", is_nonnegative(adjoint(t) * t, cfg) ? "true" : "false");
  std::printf("I <= T:   %s\n", leq(AffiliatedOperator::identity(shape), t, cfg) ? "true" : "false");
  return 0;
}
