#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <string_view>

namespace foliage {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using RationalMatrix = DenseMatrix<Rational>;

inline BigInt numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator(const Rational& q) { return boost::multiprecision::denominator(q); }
inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

/// "a" for integers, "a/b" otherwise (b > 0, lowest terms).
std::string to_string(const Rational& q);

/// Accepts "a", "-a", "a/b"; throws Error{ParseError} on anything else or b == 0.
Rational parse_rational(std::string_view text);

/// Exponent of p in a nonzero integer / rational. Zero input is a precondition violation.
int p_adic_valuation(const BigInt& x, std::int64_t p);
int p_adic_valuation(const Rational& x, std::int64_t p);

/// Smallest integer >= q.
BigInt ceil(const Rational& q);

}  // namespace foliage

namespace Eigen {

template <>
struct NumTraits<foliage::Rational> : GenericNumTraits<foliage::Rational> {
  using Real = foliage::Rational;
  using NonInteger = foliage::Rational;
  using Nested = foliage::Rational;
  using Literal = foliage::Rational;

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 64,
    MulCost = 128
  };

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
