#pragma once

#include "foliage/modular.hpp"
#include "foliage/newton_polygon.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace foliage {

/// M / p^a M for a Dieudonné module M over W(F_p) = Z_p, free of rank h, with
/// the Frobenius F and Verschiebung V as h x h matrices acting on columns.
class TruncatedDieudonneModule {
 public:
  /// The rank-0 module; it carries no prime or level.
  TruncatedDieudonneModule() = default;
  TruncatedDieudonneModule(const PrimePowerRing& ring, ModMatrix frobenius, ModMatrix verschiebung,
                           NewtonPolygon label);

  std::int64_t prime() const noexcept { return p_; }
  int level() const noexcept { return level_; }
  Eigen::Index rank() const noexcept { return frobenius_.rows(); }
  PrimePowerRing ring() const { return PrimePowerRing(p_, level_); }

  const ModMatrix& frobenius() const noexcept { return frobenius_; }
  const ModMatrix& verschiebung() const noexcept { return verschiebung_; }
  const NewtonPolygon& label() const noexcept { return label_; }

 private:
  std::int64_t p_ = 0;
  int level_ = 0;
  ModMatrix frobenius_ = ModMatrix(0, 0);
  ModMatrix verschiebung_ = ModMatrix(0, 0);
  NewtonPolygon label_;
};

/// Integer matrix of pi^k on the basis b_0..b_{h-1} of H_{m,n}, where pi
/// sends b_i to b_{i+1} and b_{h-1} to p b_0 (so pi^h = p).
ModMatrix uniformizer_power(int height, int k, std::int64_t p);

/// H_{m,n} mod p^a: F = pi^n, V = pi^m, so F has slope n/(m+n).
/// FV = VF = p and F^m = V^n are checked on construction.
TruncatedDieudonneModule minimal_module(int m, int n, int level, std::int64_t p);
/// H(beta) mod p^a as the direct sum over the parts of beta.
TruncatedDieudonneModule minimal_module(const NewtonPolygon& beta, int level, std::int64_t p);

/// Block-diagonal sum; all summands must share (p, a). MixedPrimeOrLevel otherwise.
TruncatedDieudonneModule direct_sum(std::span<const TruncatedDieudonneModule> modules);

/// Frobenius of H(beta) over Z_p as an exact matrix (no truncation).
RationalMatrix frobenius_lift(const NewtonPolygon& beta, std::int64_t p);

/// Hom(M1, M2) as a subgroup of the h2 x h1 matrices over Z/p^a.
struct HomGroup {
  PrimePowerRing ring;
  Eigen::Index source_rank;
  Eigen::Index target_rank;
  /// Howell basis of the solution group, each row a row-major flattened matrix.
  ModMatrix basis;
  /// The group is the sum of Z/p^e over these e, non-decreasing, each in [1, a].
  std::vector<int> elementary_divisor_exponents;

  int order_exponent() const;
  std::vector<ModMatrix> generators() const;
};

/// Row-major flattening used for Hom elements.
ModRow flatten(const ModMatrix& m);
ModMatrix unflatten(const ModRow& v, Eigen::Index rows, Eigen::Index cols);

/// All matrices phi with phi F1 = F2 phi and phi V1 = V2 phi.
HomGroup hom_group(const TruncatedDieudonneModule& source, const TruncatedDieudonneModule& target);

/// Images of End(H(beta) mod p^N) in End(H(beta) mod p^n) for N = n..max_level.
struct RestrictionChain {
  int n;
  int max_level;
  /// images[k] is the Howell basis (over Z/p^n) of the image from level n + k.
  std::vector<ModMatrix> images;
  /// Least N such that the image is the same for every level from N to max_level.
  int stabilization_index;
};

inline constexpr int kDefaultMaxTruncationLevel = 12;

RestrictionChain restriction_image_chain(const NewtonPolygon& beta, std::int64_t p, int n, int max_level,
                                         int level_bound = kDefaultMaxTruncationLevel);

/// Newton polygon of the characteristic polynomial of F for the p-adic
/// valuation: slopes are the valuations of the eigenvalues, non-decreasing.
/// SingularMatrix when det F = 0; SlopeOutOfRange when a slope leaves [0,1].
NewtonPolygon frobenius_newton_polygon(const RationalMatrix& frobenius, std::int64_t p);

/// dim over F_p of ker F ∩ ker V. WrongLevel unless a = 1.
int a_number(const TruncatedDieudonneModule& module);

}  // namespace foliage
