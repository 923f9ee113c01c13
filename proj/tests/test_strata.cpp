#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "foliage/errors.hpp"
#include "foliage/strata.hpp"
#include "oracle.hpp"

using namespace foliage;

namespace {

NewtonPolygon np(std::initializer_list<PairMultiplicity> pairs) { return NewtonPolygon::from_pairs(pairs); }

struct TableRow {
  const char* label;
  const char* xi;
  int f, sdim, c, i;
  std::vector<int> es;
};

// The g = 4 table, transcribed.
const std::vector<TableRow> kGenus4 = {
    {"ρ", "(4,0)+(0,4)", 4, 10, 10, 0, {1, 2, 3, 4}},
    {"f=3", "(3,0)+(1,1)+(0,3)", 3, 9, 9, 0, {1, 2, 3, 3}},
    {"f=2", "(2,0)+(2,2)+(0,2)", 2, 8, 7, 1, {1, 2, 2, 2}},
    {"β", "(1,0)+(2,1)+(1,2)+(0,1)", 1, 7, 6, 1, {1, 1, 2, 2}},
    {"γ", "(1,0)+(3,3)+(0,1)", 1, 6, 4, 2, {1, 1, 1, 1}},
    {"δ", "(3,1)+(1,3)", 0, 6, 5, 1, {0, 1, 2, 2}},
    {"ν", "(2,1)+(1,1)+(1,2)", 0, 5, 3, 2, {0, 1, 1, 1}},
    {"σ", "(4,4)", 0, 4, 0, 4, {0, 0, 0, 0}},
};

}  // namespace

TEST_CASE("cu") {
  CHECK(cu(NewtonPolygon::supersingular(3)) == 0);
  CHECK(cu(np({{1, 1, 1}})) == 0);
  CHECK(cu(np({{2, 1, 2}})) == 0);
  CHECK(cu(NewtonPolygon::ordinary(4)) == 16);
  for (int d = 0; d <= 6; ++d) {
    for (int c = 0; c <= 6; ++c) {
      if (d + c == 0) continue;
      std::vector<PairMultiplicity> parts;
      if (d > 0) parts.push_back({1, 0, d});
      if (c > 0) parts.push_back({0, 1, c});
      const auto ordinary = NewtonPolygon::from_pairs(parts);
      // direct summation: the upper polygon rises first, the lower one waits d steps
      int direct = 0;
      for (int j = 1; j < d + c; ++j) direct += std::min(j, c) - std::max(0, j - d);
      CHECK(cu(ordinary) == direct);
      CHECK(cu(ordinary) == d * c);
    }
  }
  for (int h = 1; h <= 10; ++h) {
    for (int d = 0; d <= h; ++d) {
      for (const auto& beta : enumerate(d, h - d)) CHECK((cu(beta) == 0) == beta.is_isoclinic());
    }
  }
}

TEST_CASE("leaf dimensions on the g = 4 table") {
  for (const auto& row : kGenus4) {
    CAPTURE(row.label);
    const auto xi = parse_polygon(row.xi);
    CHECK(xi.p_rank() == row.f);
    CHECK(sdim(xi) == row.sdim);
    CHECK(c_leaf(xi) == row.c);
    CHECK(i_leaf(xi) == row.i);
    CHECK(np_label(xi) == row.label);
  }
  CHECK(conjectured_max_total_dim(NewtonPolygon::ordinary(4)) == 10);
  CHECK(conjectured_max_total_dim(NewtonPolygon::supersingular(4)) == 6);
  CHECK(conjectured_max_total_dim(NewtonPolygon::ordinary(1)) == 1);
}

TEST_CASE("non-symmetric input is rejected") {
  const auto lopsided = np({{1, 0, 1}, {1, 1, 1}});
  for (auto fn : {c_leaf, sdim, i_leaf, conjectured_max_total_dim}) {
    try {
      fn(lopsided);
      FAIL("expected NotSymmetric");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotSymmetric);
    }
  }
}

TEST_CASE("strata table") {
  const auto table = strata_table(4);
  REQUIRE(table.size() == kGenus4.size());
  for (std::size_t k = 0; k < table.size(); ++k) {
    CAPTURE(k);
    CHECK(to_table_string(table[k].xi) == kGenus4[k].xi);
    CHECK(table[k].f == kGenus4[k].f);
    CHECK(table[k].sdim == kGenus4[k].sdim);
    CHECK(table[k].c == kGenus4[k].c);
    CHECK(table[k].i == kGenus4[k].i);
    CHECK(table[k].es.values() == kGenus4[k].es);
  }

  const auto g1 = strata_table(1);
  REQUIRE(g1.size() == 2);
  CHECK(g1[0].xi == NewtonPolygon::ordinary(1));
  CHECK((g1[0].f == 1 && g1[0].sdim == 1 && g1[0].c == 1 && g1[0].i == 0));
  CHECK(g1[0].es.values() == std::vector<int>{1});
  CHECK(g1[1].xi == NewtonPolygon::supersingular(1));
  CHECK((g1[1].f == 0 && g1[1].sdim == 0 && g1[1].c == 0 && g1[1].i == 0));
  CHECK(g1[1].es.values() == std::vector<int>{0});

  CHECK_THROWS_AS(strata_table(0), Error);
  CHECK_THROWS_AS(strata_table(9), Error);
}

TEST_CASE("table order is a linear extension of the polygon order") {
  for (int g = 1; g <= 6; ++g) {
    const auto table = strata_table(g);
    CHECK(table.size() == enumerate_symmetric(g).size());
    CHECK(table.front().xi == NewtonPolygon::ordinary(g));
    CHECK(table.back().xi == NewtonPolygon::supersingular(g));
    for (std::size_t a = 0; a < table.size(); ++a) {
      for (std::size_t b = a + 1; b < table.size(); ++b) CHECK_FALSE(precedes(table[a].xi, table[b].xi));
    }
  }
}

TEST_CASE("identities and monotonicity for g <= 6") {
  for (int g = 1; g <= 6; ++g) {
    const auto polygons = enumerate_symmetric(g);
    for (const auto& xi : polygons) {
      const int c = c_leaf(xi), i = i_leaf(xi), s = sdim(xi);
      CHECK(c + i == s);
      CHECK((0 <= c && c <= s && 0 <= i && i <= s));
      CHECK((c == 0) == (xi == NewtonPolygon::supersingular(g)));
      CHECK(s == oracle::lattice_points_below_diagonal([&](int x) { return xi.evaluate(x); }, g));
    }
    int violations = 0;
    for (const auto& upper : polygons) {
      for (const auto& lower : polygons) {
        if (upper == lower || !precedes(lower, upper)) continue;
        if (!(c_leaf(upper) > c_leaf(lower))) ++violations;
        if (!(i_leaf(upper) <= i_leaf(lower))) ++violations;
        if (!(sdim(upper) >= sdim(lower))) ++violations;
      }
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("sdim closed forms for g <= 8") {
  for (int g = 1; g <= 8; ++g) {
    CHECK(sdim(NewtonPolygon::ordinary(g)) == g * (g + 1) / 2);
    CHECK(sdim(NewtonPolygon::supersingular(g)) == g * g / 4);
  }
}
