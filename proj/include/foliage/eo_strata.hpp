#pragma once

#include "foliage/modular.hpp"
#include "foliage/newton_polygon.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace foliage {

/// A BT1 over F_p, modelled linearly: F, V on F_p^{2g} with FV = VF = 0.
class BT1Module {
 public:
  BT1Module(std::int64_t p, ModMatrix frobenius, ModMatrix verschiebung);

  std::int64_t prime() const noexcept { return p_; }
  Eigen::Index dimension() const noexcept { return frobenius_.rows(); }
  PrimePowerRing field() const { return PrimePowerRing(p_, 1); }
  const ModMatrix& frobenius() const noexcept { return frobenius_; }
  const ModMatrix& verschiebung() const noexcept { return verschiebung_; }

 private:
  std::int64_t p_;
  ModMatrix frobenius_;
  ModMatrix verschiebung_;
};

/// H(xi)[p]. NotSymmetric unless xi is symmetric.
BT1Module bt1_of_xi(const NewtonPolygon& xi, std::int64_t p);

/// A subspace of F_p^k given by its reduced row-echelon basis (one row per vector).
using Subspace = ModMatrix;

Subspace image(const PrimePowerRing& field, const ModMatrix& op, const Subspace& s);
Subspace preimage(const PrimePowerRing& field, const ModMatrix& op, const Subspace& s);
bool contains(const PrimePowerRing& field, const Subspace& big, const Subspace& small);

/// Coarsest flag 0 = N_0 ⊂ ... ⊂ N_k = M stable under F(.) and V^{-1}(.), by
/// increasing dimension. GradedPieceAssertionFailed if the closure is not a chain
/// or F is neither injective nor zero on some graded piece.
std::vector<Subspace> canonical_filtration(const BT1Module& m);

/// psi(1..g) with 0 <= psi(1) <= 1, psi(i) <= psi(i+1) <= psi(i) + 1.
class ElementarySequence {
 public:
  /// Throws InvariantViolation if the constraints fail.
  explicit ElementarySequence(std::vector<int> psi);

  const std::vector<int>& values() const noexcept { return psi_; }
  int genus() const noexcept { return static_cast<int>(psi_.size()); }

  friend bool operator==(const ElementarySequence&, const ElementarySequence&) = default;

 private:
  std::vector<int> psi_;
};

/// True when psi satisfies the elementary-sequence constraints.
bool is_elementary_sequence(const std::vector<int>& psi) noexcept;

/// NotSelfDualShape unless dim M = 2g and dim V(M) = g.
ElementarySequence elementary_sequence(const BT1Module& m);

/// "(a,b,c,d)"
std::string to_string(const ElementarySequence& es);

}  // namespace foliage
