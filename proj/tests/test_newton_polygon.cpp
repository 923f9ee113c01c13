#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "foliage/errors.hpp"
#include "foliage/newton_polygon.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace foliage;

namespace {

NewtonPolygon np(std::initializer_list<PairMultiplicity> pairs) { return NewtonPolygon::from_pairs(pairs); }

const NewtonPolygon rho4 = NewtonPolygon::ordinary(4);
const NewtonPolygon sigma4 = NewtonPolygon::supersingular(4);
const NewtonPolygon f3 = np({{1, 0, 3}, {1, 1, 1}, {0, 1, 3}});
const NewtonPolygon f2 = np({{1, 0, 2}, {1, 1, 2}, {0, 1, 2}});
const NewtonPolygon beta = np({{1, 0, 1}, {2, 1, 1}, {1, 2, 1}, {0, 1, 1}});
const NewtonPolygon gamma_ = np({{1, 0, 1}, {1, 1, 3}, {0, 1, 1}});
const NewtonPolygon delta = np({{3, 1, 1}, {1, 3, 1}});
const NewtonPolygon nu = np({{2, 1, 1}, {1, 1, 1}, {1, 2, 1}});

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::InvariantViolation;
}

std::vector<Rational> slopes_of(std::initializer_list<std::pair<Rational, int>> groups) {
  std::vector<Rational> out;
  for (const auto& [s, k] : groups) out.insert(out.end(), static_cast<std::size_t>(k), s);
  return out;
}

// Non-decreasing slope sequences of length h summing to c with integral breakpoints.
std::set<std::vector<Rational>> slope_sequences_by_search(int d, int c) {
  const int h = d + c;
  std::set<Rational> candidates;
  for (int b = 1; b <= h; ++b) {
    for (int a = 0; a <= b; ++a) candidates.insert(Rational(a, b));
  }
  const std::vector<Rational> values(candidates.begin(), candidates.end());
  std::set<std::vector<Rational>> out;
  std::vector<Rational> seq;
  auto rec = [&](auto&& self, std::size_t from, Rational sum) -> void {
    if (static_cast<int>(seq.size()) == h) {
      if (sum != c) return;
      std::map<Rational, int> mult;
      for (const auto& s : seq) ++mult[s];
      for (const auto& [s, k] : mult) {
        if (k % static_cast<int>(denominator(s)) != 0) return;
      }
      out.insert(seq);
      return;
    }
    for (std::size_t i = from; i < values.size(); ++i) {
      if (sum + values[i] * (h - static_cast<int>(seq.size())) > c) break;
      seq.push_back(values[i]);
      self(self, i, sum + values[i]);
      seq.pop_back();
    }
  };
  rec(rec, 0, Rational(0));
  return out;
}

}  // namespace

TEST_CASE("construction from pairs") {
  CHECK(sigma4.height() == 8);
  CHECK(sigma4.dimension() == 4);
  CHECK(sigma4.slopes() == std::vector<Rational>(8, Rational(1, 2)));

  const auto line = np({{1, 0, 1}});
  CHECK(line.height() == 1);
  CHECK(line.dimension() == 1);
  CHECK(line.slopes() == std::vector<Rational>{0});

  CHECK(nu.slopes() == slopes_of({{Rational(1, 3), 3}, {Rational(1, 2), 2}, {Rational(2, 3), 3}}));
  CHECK(np({{1, 1, 2}, {1, 1, 2}}) == NewtonPolygon::supersingular(4));

  CHECK(code_of([] { np({{2, 2, 1}}); }) == Errc::NonCoprimePair);
  CHECK(code_of([] { np({{0, 0, 1}}); }) == Errc::ZeroPair);
  CHECK(code_of([] { NewtonPolygon::from_pairs(std::span<const PairMultiplicity>{}); }) == Errc::EmptyInput);
}

TEST_CASE("construction from slopes") {
  CHECK(NewtonPolygon::from_slopes(std::vector<Rational>(8, Rational(1, 2))) == sigma4);
  CHECK(NewtonPolygon::from_slopes(slopes_of({{Rational(1, 3), 3}, {Rational(1, 2), 2}, {Rational(2, 3), 3}})) == nu);
  CHECK(code_of([] { NewtonPolygon::from_slopes(std::vector<Rational>(3, Rational(1, 2))); }) ==
        Errc::NonIntegralBreakpoints);
  CHECK(code_of([] { NewtonPolygon::from_slopes(std::vector<Rational>{Rational(3, 2), Rational(3, 2)}); }) ==
        Errc::SlopeOutOfRange);
}

TEST_CASE("evaluate and dual_upper") {
  CHECK(nu.evaluate(2) == Rational(2, 3));
  CHECK(sigma4.evaluate(4) == 2);
  CHECK(rho4.evaluate(4) == 0);
  CHECK(rho4.dual_upper(4) == 4);
  CHECK(nu.dual_upper(3) == 2);
  for (int x = 0; x <= 8; ++x) CHECK(sigma4.dual_upper(x) == sigma4.evaluate(x));
  CHECK(code_of([] { nu.evaluate(9); }) == Errc::AbscissaOutOfRange);
  CHECK(code_of([] { nu.dual_upper(-1); }) == Errc::AbscissaOutOfRange);
}

TEST_CASE("symmetry and p-rank") {
  CHECK(delta.is_symmetric());
  CHECK_FALSE(np({{1, 0, 1}}).is_symmetric());
  CHECK(np({{2, 1, 1}, {1, 2, 1}}).is_symmetric());
  CHECK(rho4.p_rank() == 4);
  CHECK(sigma4.p_rank() == 0);
  CHECK(beta.p_rank() == 1);
}

TEST_CASE("partial order") {
  CHECK(precedes(sigma4, rho4));
  CHECK_FALSE(precedes(gamma_, delta));
  CHECK_FALSE(precedes(delta, gamma_));
  CHECK(precedes(nu, nu));
  CHECK_FALSE(precedes(np({{1, 0, 1}}), np({{0, 1, 1}})));
}

TEST_CASE("enumeration") {
  const auto sym4 = enumerate_symmetric(4);
  const std::set<std::string> expected{to_string(rho4), to_string(f3),    to_string(f2), to_string(beta),
                                       to_string(gamma_), to_string(delta), to_string(nu), to_string(sigma4)};
  std::set<std::string> got;
  for (const auto& x : sym4) got.insert(to_string(x));
  CHECK(sym4.size() == 8);
  CHECK(got == expected);

  const std::vector<NewtonPolygon> g1{NewtonPolygon::ordinary(1), NewtonPolygon::supersingular(1)};
  CHECK(enumerate_symmetric(1) == g1);
  CHECK(enumerate(1, 1) == g1);

  for (int h = 1; h <= 6; ++h) {
    for (int d = 0; d <= h; ++d) {
      const auto listed = enumerate(d, h - d);
      std::set<std::vector<Rational>> seqs;
      for (std::size_t k = 0; k < listed.size(); ++k) {
        seqs.insert(listed[k].slopes());
        if (k > 0) CHECK(compare_slope_sequences(listed[k - 1], listed[k]) == std::strong_ordering::less);
      }
      CHECK(seqs.size() == listed.size());
      CHECK(seqs == slope_sequences_by_search(d, h - d));
    }
  }

  CHECK(code_of([] { enumerate(10, 10); }) == Errc::BoundExceeded);
  CHECK(code_of([] { enumerate_symmetric(0); }) == Errc::BoundExceeded);
  CHECK(code_of([] { enumerate_symmetric(9); }) == Errc::BoundExceeded);
}

TEST_CASE("hasse diagram") {
  const auto sym4 = enumerate_symmetric(4);
  auto name = [&](std::size_t k) { return to_string(sym4[k]); };
  std::set<std::pair<std::string, std::string>> covers;
  for (const auto& [lower, upper] : hasse_diagram(sym4)) covers.insert({name(upper), name(lower)});
  const std::set<std::pair<std::string, std::string>> expected{
      {to_string(rho4), to_string(f3)},   {to_string(f3), to_string(f2)},     {to_string(f2), to_string(beta)},
      {to_string(beta), to_string(gamma_)}, {to_string(beta), to_string(delta)}, {to_string(gamma_), to_string(nu)},
      {to_string(delta), to_string(nu)},  {to_string(nu), to_string(sigma4)}};
  CHECK(covers == expected);

  const std::vector<NewtonPolygon> single{nu};
  CHECK(hasse_diagram(single).empty());

  const auto sym2 = enumerate_symmetric(2);
  const auto chain = hasse_diagram(sym2);
  CHECK(sym2.size() == 3);
  CHECK(chain.size() == 2);

  const std::vector<NewtonPolygon> dup{nu, nu};
  CHECK(code_of([&] { hasse_diagram(dup); }) == Errc::DuplicateInput);
}

TEST_CASE("serialization") {
  CHECK(to_string(nu) == "(2,1) + (1,1) + (1,2)");
  CHECK(to_string(sigma4) == "(1,1)^4");
  CHECK(to_table_string(rho4) == "(4,0)+(0,4)");
  CHECK(to_table_string(gamma_) == "(1,0)+(3,3)+(0,1)");
  CHECK(parse_polygon("(3,1)+(1,3)") == delta);
  CHECK(parse_polygon(" (1,1) ^ 4 ") == sigma4);
  CHECK(parse_polygon("(4,4)") == sigma4);
  CHECK(parse_polygon("(2,0)+(2,2)+(0,2)") == f2);
  CHECK(code_of([] { parse_polygon("(1,1"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_polygon(""); }) == Errc::EmptyInput);
  CHECK(code_of([] { parse_polygon("(0,0)"); }) == Errc::ZeroPair);
  for (int h = 1; h <= 8; ++h) {
    for (int d = 0; d <= h; ++d) {
      for (const auto& x : enumerate(d, h - d)) {
        CHECK(parse_polygon(to_string(x)) == x);
        CHECK(parse_polygon(to_table_string(x)) == x);
      }
    }
  }
}

TEST_CASE("properties over all polygons of small height") {
  for (int h = 1; h <= 12; ++h) {
    for (int d = 0; d <= h; ++d) {
      const auto listed = enumerate(d, h - d);
      std::vector<std::vector<Rational>> ordinates;
      for (const auto& x : listed) {
        std::vector<Rational> ys;
        for (int j = 0; j <= h; ++j) ys.push_back(x.evaluate(j));
        CHECK(ys.front() == 0);
        CHECK(ys.back() == h - d);
        bool convex = true;
        bool all_equal = true;
        for (int j = 1; j < h; ++j) convex = convex && ys[j + 1] - 2 * ys[j] + ys[j - 1] >= 0;
        for (int j = 0; j <= h; ++j) {
          const Rational gap = x.dual_upper(j) - ys[j];
          CHECK(gap >= 0);
          all_equal = all_equal && gap == 0;
        }
        CHECK(convex);
        CHECK(all_equal == x.is_isoclinic());
        CHECK(NewtonPolygon::from_slopes(x.slopes()) == x);
        ordinates.push_back(std::move(ys));
      }

      auto above = [&](std::size_t a, std::size_t b) {
        for (int j = 0; j <= h; ++j) {
          if (ordinates[a][j] < ordinates[b][j]) return false;
        }
        return true;
      };
      const std::size_t n = listed.size();
      int order_violations = 0;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          if (precedes(listed[a], listed[b]) != above(a, b)) ++order_violations;
          if (a != b && above(a, b) && above(b, a)) ++order_violations;
          if (!above(a, b)) continue;
          for (std::size_t c = 0; c < n; ++c) {
            if (above(b, c) && !above(a, c)) ++order_violations;
          }
        }
      }
      CHECK(order_violations == 0);

      if (d == h - d) {
        const auto sigma = NewtonPolygon::supersingular(d);
        const auto rho = NewtonPolygon::ordinary(d);
        for (const auto& x : listed) {
          if (!x.is_symmetric()) continue;
          CHECK(precedes(sigma, x));
          CHECK(precedes(x, rho));
        }
      }
    }
  }
}
