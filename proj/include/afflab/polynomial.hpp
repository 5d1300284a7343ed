#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "afflab/error.hpp"

namespace afflab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

namespace detail {

inline bool exactly_zero(const Complex& c) { return c == Complex(0.0, 0.0); }
inline bool exactly_zero(const Matrix& m) { return m.size() == 0 || (m.array() == Complex(0.0)).all(); }

inline Complex zero_like(const Complex&) { return Complex(0.0, 0.0); }
inline Matrix zero_like(const Matrix& m) { return Matrix::Zero(m.rows(), m.cols()); }

inline Complex coeff_adjoint(const Complex& c) { return std::conj(c); }
inline Matrix coeff_adjoint(const Matrix& m) { return m.adjoint(); }

}  // namespace detail

/// Closed-form fiber rule `k -> sum_p coeffs[p] * k^p`, valid for every
/// block index k >= start. Coeff is a Matrix for operators and a Complex
/// for central elements; both form a ring, so sums, products and adjoints
/// of tails stay tails.
template <class Coeff>
struct PolynomialTail {
  static constexpr std::size_t kMaxDegree = 16;

  std::size_t start = 0;
  std::vector<Coeff> coeffs;

  Coeff operator()(std::size_t k) const {
    const double x = static_cast<double>(k);
    Coeff acc = coeffs.back();
    for (std::size_t p = coeffs.size() - 1; p-- > 0;) acc = Coeff(acc * x + coeffs[p]);
    return acc;
  }

  /// Highest power with a nonzero coefficient; the zero polynomial has degree 0.
  std::size_t degree() const {
    for (std::size_t p = coeffs.size(); p-- > 1;) {
      if (!detail::exactly_zero(coeffs[p])) return p;
    }
    return 0;
  }

  bool constant() const { return degree() == 0; }
};

namespace tails {

template <class Coeff>
PolynomialTail<Coeff> add(const PolynomialTail<Coeff>& a, const PolynomialTail<Coeff>& b,
                          double sign = 1.0) {
  PolynomialTail<Coeff> out;
  out.start = std::max(a.start, b.start);
  const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
  out.coeffs.reserve(n);
  for (std::size_t p = 0; p < n; ++p) {
    const Coeff& ref = a.coeffs.front();
    Coeff ca = p < a.coeffs.size() ? a.coeffs[p] : detail::zero_like(ref);
    Coeff cb = p < b.coeffs.size() ? b.coeffs[p] : detail::zero_like(ref);
    out.coeffs.push_back(Coeff(ca + sign * cb));
  }
  return out;
}

/// Product tail, or nullopt when the degree would exceed kMaxDegree.
template <class Coeff>
std::optional<PolynomialTail<Coeff>> mul(const PolynomialTail<Coeff>& a,
                                         const PolynomialTail<Coeff>& b) {
  const std::size_t da = a.degree(), db = b.degree();
  if (da + db > PolynomialTail<Coeff>::kMaxDegree) return std::nullopt;
  PolynomialTail<Coeff> out;
  out.start = std::max(a.start, b.start);
  const Coeff zero = detail::zero_like(Coeff(a.coeffs.front() * b.coeffs.front()));
  out.coeffs.assign(da + db + 1, zero);
  for (std::size_t i = 0; i <= da; ++i) {
    for (std::size_t j = 0; j <= db; ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return out;
}

template <class Coeff>
PolynomialTail<Coeff> adjoint(const PolynomialTail<Coeff>& a) {
  PolynomialTail<Coeff> out{a.start, {}};
  for (const auto& c : a.coeffs) out.coeffs.push_back(detail::coeff_adjoint(c));
  return out;
}

template <class Coeff>
PolynomialTail<Coeff> scale(const PolynomialTail<Coeff>& a, Complex alpha) {
  PolynomialTail<Coeff> out{a.start, {}};
  for (const auto& c : a.coeffs) out.coeffs.push_back(Coeff(alpha * c));
  return out;
}

/// Applies a linear coefficient map (e.g. the normalized trace) termwise.
template <class To, class From, class Fn>
PolynomialTail<To> map(const PolynomialTail<From>& a, Fn&& fn) {
  PolynomialTail<To> out{a.start, {}};
  for (const auto& c : a.coeffs) out.coeffs.push_back(fn(c));
  return out;
}

}  // namespace tails
}  // namespace afflab
