#ifndef PRELOG_NUMERIC_HPP
#define PRELOG_NUMERIC_HPP

#include <gmpxx.h>

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace Eigen {

/**
 * Scalar traits for GMP arbitrary-precision integers, so that dense Eigen
 * types can be instantiated with exact integer entries.
 */
template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  typedef mpz_class Real;
  typedef mpz_class NonInteger;
  typedef mpz_class Nested;

  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 30,
    MulCost = 50
  };
};

}  // namespace Eigen

namespace prelog {

using Int = mpz_class;

using Eigen::Dynamic;
using Eigen::Index;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Dynamic, Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Dynamic, 1>;
template <typename Scalar>
using DenseRowVector = Eigen::Matrix<Scalar, 1, Dynamic>;

using IntMatrix = DenseMatrix<Int>;
using IntVector = DenseVector<Int>;
using IntRowVector = DenseRowVector<Int>;

/** Absolute value usable for any signed integral scalar. */
template <typename Scalar>
inline Scalar absVal(const Scalar& x) {
  return x < Scalar(0) ? Scalar(-x) : Scalar(x);
}

/** |a| < |b|, with b == 0 treated as +infinity. */
template <typename Scalar>
inline bool absLess(const Scalar& a, const Scalar& b) {
  if (b == Scalar(0)) return a != Scalar(0);
  if (a == Scalar(0)) return false;
  return absVal(a) < absVal(b);
}

/** Floor division (quotient rounded toward minus infinity). */
template <typename Scalar>
inline Scalar floorDiv(const Scalar& a, const Scalar& b) {
  Scalar q = a / b;  // truncated toward zero
  if (q * b != a && ((a < Scalar(0)) != (b < Scalar(0)))) q -= Scalar(1);
  return q;
}

/** Nonnegative gcd, with gcdOf(0, 0) == 0. */
template <typename Scalar>
inline Scalar gcdOf(const Scalar& a, const Scalar& b) {
  Scalar x = absVal(a), y = absVal(b);
  while (y != Scalar(0)) {
    Scalar t = x % y;
    x = y;
    y = t;
  }
  return x;
}

/**
 * Primality test for the characteristic arguments of mod-p ranks.  Uses the
 * GMP Baillie-PSW/Miller-Rabin combination, which has no known composite
 * that passes.
 */
inline bool isPrime(const Int& p) {
  if (p < 2) return false;
  return mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
}

/** Parse a decimal integer (optional leading '-'), rejecting junk. */
inline Int intFromDecimal(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (text[0] == '-') ? 1 : 0;
  if (start == text.size())
    throw std::invalid_argument("bad integer literal: " + text);
  for (std::size_t k = start; k < text.size(); ++k)
    if (text[k] < '0' || text[k] > '9')
      throw std::invalid_argument("bad integer literal: " + text);
  return Int(text, 10);
}

/** Build a matrix from a row-major initializer list of rows. */
template <typename Scalar>
DenseMatrix<Scalar> matrixFromRows(
    const std::vector<std::vector<Scalar>>& rows) {
  Index n = static_cast<Index>(rows.size());
  Index m = n == 0 ? 0 : static_cast<Index>(rows[0].size());
  DenseMatrix<Scalar> out(n, m);
  for (Index i = 0; i < n; ++i) {
    if (static_cast<Index>(rows[i].size()) != m)
      throw std::invalid_argument("ragged row list");
    for (Index j = 0; j < m; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

/** Build a column vector from an initializer list. */
template <typename Scalar>
DenseVector<Scalar> vectorOf(const std::vector<Scalar>& entries) {
  DenseVector<Scalar> out(static_cast<Index>(entries.size()));
  for (Index i = 0; i < out.size(); ++i) out(i) = entries[i];
  return out;
}

}  // namespace prelog

#endif  // PRELOG_NUMERIC_HPP
