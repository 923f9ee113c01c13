#pragma once

#include "foliage/rational.hpp"

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace foliage {

/// Default cap on the height h = d + c accepted by the enumerators.
inline constexpr int kDefaultHeightBound = 16;

/// One simple isoclinic summand: dimension m, codimension n, slope n/(m+n).
class SlopePair {
 public:
  /// Throws ZeroPair for (0,0) and NonCoprimePair when gcd(m,n) != 1.
  SlopePair(int m, int n);

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  int height() const noexcept { return m_ + n_; }
  Rational slope() const { return Rational(n_, m_ + n_); }
  /// The Serre-dual summand (n, m).
  SlopePair dual() const { return SlopePair(n_, m_); }

  /// Orders by slope; distinct coprime pairs have distinct slopes.
  friend std::strong_ordering operator<=>(const SlopePair& a, const SlopePair& b) noexcept {
    return static_cast<long long>(a.n_) * b.height() <=> static_cast<long long>(b.n_) * a.height();
  }
  friend bool operator==(const SlopePair&, const SlopePair&) noexcept = default;

 private:
  int m_;
  int n_;
};

struct PairMultiplicity {
  int m;
  int n;
  int multiplicity;
};

/// A Newton polygon from (0,0) to (h,c), lower convex, slopes in [0,1],
/// stored canonically as coprime pairs with multiplicities sorted by slope.
class NewtonPolygon {
 public:
  struct Part {
    SlopePair pair;
    int multiplicity;
    friend bool operator==(const Part&, const Part&) noexcept = default;
  };

  /// The empty polygon (height 0); only produced for empty direct sums.
  NewtonPolygon() = default;

  /// Merges equal pairs and sorts by slope. Errors: ZeroPair, NonCoprimePair,
  /// EmptyInput, and EmptyInput for a multiplicity below one.
  static NewtonPolygon from_pairs(std::span<const PairMultiplicity> pairs);
  static NewtonPolygon from_pairs(std::initializer_list<PairMultiplicity> pairs) {
    return from_pairs(std::span<const PairMultiplicity>(pairs.begin(), pairs.size()));
  }
  /// Inverse of slopes(). Errors: EmptyInput, SlopeOutOfRange, NonIntegralBreakpoints.
  static NewtonPolygon from_slopes(std::span<const Rational> slopes);

  static NewtonPolygon ordinary(int g);
  static NewtonPolygon supersingular(int g);

  const std::vector<Part>& parts() const noexcept { return parts_; }
  int height() const noexcept { return height_; }
  int dimension() const noexcept { return dimension_; }
  int codimension() const noexcept { return height_ - dimension_; }
  bool empty() const noexcept { return parts_.empty(); }

  /// Slopes with multiplicity, non-decreasing; length = height().
  std::vector<Rational> slopes() const;

  /// Ordinate of the polygon at integer abscissa x in [0, h].
  Rational evaluate(int x) const;
  /// Ordinate of the upper convex polygon with the same slopes taken in
  /// non-increasing order.
  Rational dual_upper(int x) const;

  bool is_symmetric() const;
  bool is_isoclinic() const noexcept { return parts_.size() <= 1; }
  /// Multiplicity of slope 0.
  int p_rank() const noexcept;
  /// Number of copies of `pair` (not of its slope).
  int multiplicity_of(const SlopePair& pair) const noexcept;

  friend bool operator==(const NewtonPolygon&, const NewtonPolygon&) noexcept = default;

 private:
  explicit NewtonPolygon(std::vector<Part> parts);

  std::vector<Part> parts_;
  int height_ = 0;
  int dimension_ = 0;
};

/// Lexicographic comparison of the slope sequences.
std::strong_ordering compare_slope_sequences(const NewtonPolygon& a, const NewtonPolygon& b);

/// gamma ≺ beta: same (d, c) and no point of gamma lies below beta.
bool precedes(const NewtonPolygon& gamma, const NewtonPolygon& beta);

/// All polygons with dimension d and codimension c, ordered lexicographically
/// by slope sequence. BoundExceeded when d + c > height_bound.
std::vector<NewtonPolygon> enumerate(int d, int c, int height_bound = kDefaultHeightBound);
/// The symmetric polygons of height 2g, same order.
std::vector<NewtonPolygon> enumerate_symmetric(int g, int height_bound = kDefaultHeightBound);

/// Covering pairs (lower, upper) of ≺ restricted to `polygons`, as indices
/// into the input. DuplicateInput on repeated entries.
std::vector<std::pair<std::size_t, std::size_t>> hasse_diagram(std::span<const NewtonPolygon> polygons);

/// "(m1,n1)^r1 + (m2,n2) + ..." in slope order; multiplicity 1 is written bare.
std::string to_string(const NewtonPolygon& np);
/// Compact layout used by the strata table: each part as (r*m, r*n), joined by '+'.
std::string to_table_string(const NewtonPolygon& np);
/// Parses "(m,n)^r + ..." (whitespace-insensitive). A non-coprime term (k*m, k*n)
/// is read as (m,n)^k. Errors: ParseError, ZeroPair, EmptyInput.
NewtonPolygon parse_polygon(std::string_view text);

}  // namespace foliage
