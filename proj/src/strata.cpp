#include "foliage/strata.hpp"

#include "foliage/errors.hpp"

#include <array>
#include <set>
#include <utility>

namespace foliage {

namespace {

void require_symmetric(const NewtonPolygon& xi) {
  if (!xi.is_symmetric()) throw Error(Errc::NotSymmetric, to_string(xi) + " is not symmetric");
}

int to_int_checked(const Rational& value, const char* what) {
  if (!is_integral(value)) {
    throw Error(Errc::NonIntegralResult, std::string(what) + " evaluated to " + to_string(value));
  }
  return static_cast<int>(numerator(value));
}

}  // namespace

int cu(const NewtonPolygon& beta) {
  Rational total = 0;
  for (int j = 1; j < beta.height(); ++j) total += beta.dual_upper(j) - beta.evaluate(j);
  return to_int_checked(total, "cu");
}

int c_leaf(const NewtonPolygon& xi) {
  require_symmetric(xi);
  const int g = xi.height() / 2;
  Rational total = 0;
  for (int j = 1; j <= g; ++j) total += Rational(j, 2) - xi.evaluate(j);
  return to_int_checked(2 * total, "c");
}

int sdim(const NewtonPolygon& xi) {
  require_symmetric(xi);
  const int g = xi.height() / 2;
  int count = 0;
  for (int x = 1; x <= g; ++x) {
    const int lowest = static_cast<int>(ceil(xi.evaluate(x)));
    count += std::max(0, x - lowest);
  }
  return count;
}

int i_leaf(const NewtonPolygon& xi) {
  const int value = sdim(xi) - c_leaf(xi);
  if (value < 0) throw Error(Errc::NegativeResult, "i = sdim - c is negative for " + to_string(xi));
  return value;
}

int conjectured_max_total_dim(const NewtonPolygon& xi) {
  require_symmetric(xi);
  const int g = xi.height() / 2;
  return g * (g - 1) / 2 + xi.p_rank();
}

StrataRecord strata_record(const NewtonPolygon& xi, std::int64_t p) {
  const int s = sdim(xi);
  const int c = c_leaf(xi);
  const int i = i_leaf(xi);
  if (c + i != s || c < 0 || c > s) throw Error(Errc::InvariantViolation, "c + i = sdim fails");
  return {xi, xi.p_rank(), s, c, i, elementary_sequence(bt1_of_xi(xi, p)), conjectured_max_total_dim(xi)};
}

std::vector<StrataRecord> strata_table(int g, int height_bound, std::int64_t p) {
  const auto polygons = enumerate_symmetric(g, height_bound);
  const std::size_t n = polygons.size();
  std::vector<int> pending_uppers(n, 0);
  std::vector<std::vector<std::size_t>> lowers(n);
  for (const auto& [lower, upper] : hasse_diagram(polygons)) {
    ++pending_uppers[lower];
    lowers[upper].push_back(lower);
  }

  // polygons are already sorted by slope sequence, so the index is the tie-break
  std::set<std::size_t> ready;
  for (std::size_t k = 0; k < n; ++k) {
    if (pending_uppers[k] == 0) ready.insert(k);
  }
  std::vector<StrataRecord> table;
  table.reserve(n);
  while (!ready.empty()) {
    const std::size_t k = *ready.begin();
    ready.erase(ready.begin());
    table.push_back(strata_record(polygons[k], p));
    for (std::size_t lower : lowers[k]) {
      if (--pending_uppers[lower] == 0) ready.insert(lower);
    }
  }
  return table;
}

std::string np_label(const NewtonPolygon& xi) {
  static const std::array<std::pair<const char*, NewtonPolygon>, 4> named{{
      {"β", NewtonPolygon::from_pairs({{1, 0, 1}, {2, 1, 1}, {1, 2, 1}, {0, 1, 1}})},
      {"γ", NewtonPolygon::from_pairs({{1, 0, 1}, {1, 1, 3}, {0, 1, 1}})},
      {"δ", NewtonPolygon::from_pairs({{3, 1, 1}, {1, 3, 1}})},
      {"ν", NewtonPolygon::from_pairs({{2, 1, 1}, {1, 1, 1}, {1, 2, 1}})},
  }};
  for (const auto& [name, np] : named) {
    if (np == xi) return name;
  }
  if (xi.is_symmetric() && !xi.empty()) {
    const int g = xi.height() / 2;
    if (xi == NewtonPolygon::ordinary(g)) return "ρ";
    if (xi == NewtonPolygon::supersingular(g)) return "σ";
    const int f = xi.p_rank();
    if (f > 0 && f < g && xi == NewtonPolygon::from_pairs({{1, 0, f}, {1, 1, g - f}, {0, 1, f}})) {
      return "f=" + std::to_string(f);
    }
  }
  return to_table_string(xi);
}

}  // namespace foliage
