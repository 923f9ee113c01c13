#pragma once

#include "foliage/rational.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace foliage {

/// Dense matrices over Z/p^a, entries stored as canonical residues in [0, p^a).
using ModMatrix = DenseMatrix<std::int64_t>;
using ModRow = Eigen::Matrix<std::int64_t, 1, Eigen::Dynamic>;

bool is_prime(std::int64_t n) noexcept;

/// The coefficient ring Z/p^a. The modulus is capped so that a product of two
/// residues fits in 64 bits.
class PrimePowerRing {
 public:
  static constexpr std::int64_t kMaxModulus = (std::int64_t{1} << 31) - 1;

  PrimePowerRing(std::int64_t p, int level);

  std::int64_t prime() const noexcept { return p_; }
  int level() const noexcept { return level_; }
  std::int64_t modulus() const noexcept { return modulus_; }

  std::int64_t reduce(std::int64_t x) const noexcept {
    const std::int64_t r = x % modulus_;
    return r < 0 ? r + modulus_ : r;
  }
  std::int64_t mul(std::int64_t x, std::int64_t y) const noexcept {
    return static_cast<std::int64_t>((static_cast<__int128>(x) * y) % modulus_);
  }
  std::int64_t power_of_p(int e) const noexcept { return powers_[static_cast<std::size_t>(e)]; }

  /// v_p of a residue, with v(0) = level.
  int valuation(std::int64_t x) const noexcept;
  /// Inverse of a residue prime to p.
  std::int64_t inverse_unit(std::int64_t u) const;

  ModMatrix reduce(const ModMatrix& m) const;
  ModMatrix multiply(const ModMatrix& a, const ModMatrix& b) const;

  friend bool operator==(const PrimePowerRing& x, const PrimePowerRing& y) noexcept {
    return x.p_ == y.p_ && x.level_ == y.level_;
  }

 private:
  std::int64_t p_;
  int level_;
  std::int64_t modulus_;
  std::vector<std::int64_t> powers_;
};

/// Howell normal form of the row span: pivots are powers of p, entries above a
/// pivot are reduced below it, zero rows dropped. Two row sets span the same
/// subgroup iff their Howell forms are equal.
ModMatrix howell_form(const PrimePowerRing& ring, const ModMatrix& rows);

/// Howell basis (as rows) of {x : a * x = 0}.
ModMatrix kernel_basis(const PrimePowerRing& ring, const ModMatrix& a);

/// Whether `v` lies in the span of a Howell basis.
bool span_contains(const PrimePowerRing& ring, const ModMatrix& howell, const ModRow& v);

/// log_p of the order of the subgroup spanned by a Howell basis.
int span_order_exponent(const PrimePowerRing& ring, const ModMatrix& howell);

/// Valuations of the nonzero Smith-form diagonal entries, non-decreasing.
std::vector<int> smith_valuations(const PrimePowerRing& ring, const ModMatrix& a);

/// log_p |ker a| for a square a acting on (Z/p^a)^n.
int kernel_order_exponent(const PrimePowerRing& ring, const ModMatrix& a);

/// Coefficients of det(t I - a), leading coefficient first. Division free
/// (Berkowitz), so it is valid over any commutative scalar type.
template <class Derived>
std::vector<typename Derived::Scalar> characteristic_polynomial(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  eigen_assert(a.rows() == a.cols());
  const Eigen::Index n = a.rows();
  std::vector<Scalar> poly{Scalar(1)};
  for (Eigen::Index r = 0; r < n; ++r) {
    // Toeplitz column: 1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C
    std::vector<Scalar> toeplitz;
    toeplitz.reserve(static_cast<std::size_t>(r) + 2);
    toeplitz.push_back(Scalar(1));
    toeplitz.push_back(-a(r, r));
    DenseMatrix<Scalar> col = a.block(0, r, r, 1);
    const DenseMatrix<Scalar> leading = a.topLeftCorner(r, r);
    const DenseMatrix<Scalar> row = a.block(r, 0, 1, r);
    for (Eigen::Index k = 0; k < r; ++k) {
      Scalar dot(0);
      for (Eigen::Index j = 0; j < r; ++j) dot += row(0, j) * col(j, 0);
      toeplitz.push_back(-dot);
      if (k + 1 < r) {
        DenseMatrix<Scalar> next_col = DenseMatrix<Scalar>::Zero(r, 1);
        for (Eigen::Index i = 0; i < r; ++i) {
          for (Eigen::Index j = 0; j < r; ++j) next_col(i, 0) += leading(i, j) * col(j, 0);
        }
        col = std::move(next_col);
      }
    }
    std::vector<Scalar> next(poly.size() + 1, Scalar(0));
    for (std::size_t i = 0; i < next.size(); ++i) {
      for (std::size_t j = 0; j < poly.size() && j <= i; ++j) next[i] += toeplitz[i - j] * poly[j];
    }
    poly = std::move(next);
  }
  return poly;
}

}  // namespace foliage
