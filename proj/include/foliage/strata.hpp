#pragma once

#include "foliage/eo_strata.hpp"
#include "foliage/newton_polygon.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace foliage {

/// Sum over 0 < j < h of (dual_upper(j) - evaluate(j)).
int cu(const NewtonPolygon& beta);

/// 2 * sum over 0 < j <= g of (j/2 - xi(j)). NotSymmetric for non-symmetric xi.
int c_leaf(const NewtonPolygon& xi);

/// Number of lattice points (x, y) with 1 <= x <= g and xi(x) <= y <= x - 1.
int sdim(const NewtonPolygon& xi);

/// sdim - c_leaf; NegativeResult if that is below zero.
int i_leaf(const NewtonPolygon& xi);

/// g(g-1)/2 + p-rank. Conjectural.
int conjectured_max_total_dim(const NewtonPolygon& xi);

struct StrataRecord {
  NewtonPolygon xi;
  int f;
  int sdim;
  int c;
  int i;
  ElementarySequence es;
  int conjectured_max_total_dim;
};

StrataRecord strata_record(const NewtonPolygon& xi, std::int64_t p = 2);

/// One record per symmetric polygon of height 2g, in a topological order of ≺
/// from ordinary down to supersingular; ties go to the smaller slope sequence.
std::vector<StrataRecord> strata_table(int g, int height_bound = kDefaultHeightBound, std::int64_t p = 2);

/// Short display name: the customary Greek letter for the named g = 4 strata,
/// ρ / σ for ordinary / supersingular, "f=k" for (1,0)^k + (1,1)^(g-k) + (0,1)^k,
/// otherwise the table form of the polygon.
std::string np_label(const NewtonPolygon& xi);

}  // namespace foliage
