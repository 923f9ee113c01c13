#pragma once

#include "foliage/newton_polygon.hpp"

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace foliage {

enum class SsBlockKind { I, II };

/// I(r): one G_{1,1} with a pairing of degree p^{2r}.
/// II(r): a pair of G_{1,1} with a pairing of degree p^{4r+2}.
struct SsBlock {
  SsBlockKind kind;
  int r;
  friend auto operator<=>(const SsBlock&, const SsBlock&) = default;
};

/// Exponents d_1 <= ... <= d_k of the pairing on (m,n)^k + (n,m)^k, m > n.
struct PartExponents {
  SlopePair pair;
  std::vector<int> exponents;
  friend bool operator==(const PartExponents&, const PartExponents&) = default;
};

/// Normal form of a quasi-polarization on a minimal p-divisible group. The
/// Newton polygon is determined by the blocks: (1,1)^{#I + 2 #II} plus
/// (m,n)^k + (n,m)^k for each part.
class QuasiPolarizationForm {
 public:
  /// Sorts blocks (I before II, then by r) and parts (by slope). Errors:
  /// ParseError for negative exponents or a part with m <= n, DuplicateInput
  /// for a repeated part, EmptyInput when nothing is given or a part has no exponents.
  QuasiPolarizationForm(std::vector<SsBlock> ss_blocks, std::vector<PartExponents> parts);

  const NewtonPolygon& xi() const noexcept { return xi_; }
  const std::vector<SsBlock>& ss_blocks() const noexcept { return ss_blocks_; }
  const std::vector<PartExponents>& parts() const noexcept { return parts_; }

  friend bool operator==(const QuasiPolarizationForm& a, const QuasiPolarizationForm& b) {
    return a.ss_blocks_ == b.ss_blocks_ && a.parts_ == b.parts_;
  }

 private:
  std::vector<SsBlock> ss_blocks_;
  std::vector<PartExponents> parts_;
  NewtonPolygon xi_;
};

/// The form has degree p^e for this e.
int degree_exponent(const QuasiPolarizationForm& form);

/// The unique form of degree 1. NotSymmetric unless xi is symmetric.
QuasiPolarizationForm principal_form(const NewtonPolygon& xi);

inline constexpr int kDefaultDegreeExponentBound = 24;

/// Every normal form on H(xi) of degree p^e, sorted by serialization.
/// Empty for odd e. NotSymmetric, BoundExceeded when e is outside [0, bound].
std::vector<QuasiPolarizationForm> enumerate_forms(const NewtonPolygon& xi, int e,
                                                   int exponent_bound = kDefaultDegreeExponentBound);

enum class IsogenyMove { I, IIBeta, IIGamma, III };

std::string_view to_string(IsogenyMove move) noexcept;

/// Change of degree_exponent from source to target along a move.
int degree_change(IsogenyMove move) noexcept;

struct MoveEdge {
  IsogenyMove move;
  QuasiPolarizationForm target;
};

/// Targets of one move applied to one block (or block pair) of `form`:
///   i:        I(r+1)       -> I(r)
///   ii-beta:  I(r), I(r)   -> II(r)
///   ii-gamma: II(r+1)      -> I(r), I(r)
///   iii:      d_j + 1      -> d_j on one part
/// InvariantViolation if an edge does not change the degree by degree_change().
std::vector<MoveEdge> isogeny_moves(const QuasiPolarizationForm& form);

/// Sources of the edges that end at `form`.
std::vector<MoveEdge> inverse_isogeny_moves(const QuasiPolarizationForm& form);

struct CommonSource {
  QuasiPolarizationForm source;
  std::vector<IsogenyMove> path_to_first;
  std::vector<IsogenyMove> path_to_second;
};

inline constexpr int kDefaultSearchDepth = 8;

/// A form with move paths to both inputs, found by backward breadth-first
/// search. Among the sources whose longer path is shortest, the one with the
/// least total path length wins, then the smaller serialization.
/// MismatchedPolygon for different xi; SearchDepthExceeded past max_depth.
CommonSource common_source(const QuasiPolarizationForm& first, const QuasiPolarizationForm& second,
                           int max_depth = kDefaultSearchDepth);

/// "ss:[I(0),II(1)];parts:[(2,1):[0,1]]"
std::string to_string(const QuasiPolarizationForm& form);
/// Inverse of to_string (whitespace-insensitive). ParseError on bad input.
QuasiPolarizationForm parse_form(std::string_view text);

/// Digraph of the moves among `forms`, edge labels i | ii-beta | ii-gamma | iii.
std::string move_graph_dot(std::span<const QuasiPolarizationForm> forms);

}  // namespace foliage
